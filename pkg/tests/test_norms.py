from fractions import Fraction as F

import pytest
from hypothesis import given

from carleson import DyadicInterval, StepFunction, bmo_estimate, bmod_norm_sq, mean_oscillation
from carleson.constructions import dyadic_counterexample, dyadic_log, poisson_staircase
from carleson.norms import dyadic_oscillation_sup, grid_intervals, l1_norm, l2_norm_sq

from conftest import step_functions

HAAR = StepFunction.from_pieces([(0, F(1, 2), 1), (F(1, 2), 1, -1)])
CHI01 = StepFunction.indicator(0, 1)


def test_bmod_examples():
    assert bmod_norm_sq(HAAR).value == 1
    r = bmod_norm_sq(CHI01)
    assert r.value == F(1, 4) and r.witness == DyadicInterval(1, 0)
    assert bmod_norm_sq(StepFunction.zero()).value == 0


@pytest.mark.parametrize("N", range(1, 9))
def test_bmod_of_counterexample_is_N(N):
    r = bmod_norm_sq(dyadic_counterexample(N))
    assert r.value == N and r.witness == DyadicInterval(0, 0)


@given(step_functions(depth=3, span=2))
def test_bmod_dominates_local_sums(b):
    v = bmod_norm_sq(b).value
    from carleson import haar_coefficients

    c = haar_coefficients(b, top=6)
    for i in (DyadicInterval(0, 0), DyadicInterval(1, 0), DyadicInterval(-1, 3)):
        assert sum((c.b_squared(j) for j, _ in c.items() if i.contains(j)), F(0)) / i.length <= v


def test_mean_oscillation_examples():
    assert mean_oscillation(HAAR, (0, 1)) == 1
    assert mean_oscillation(CHI01, (0, 2)) == F(1, 2)
    assert mean_oscillation(CHI01, DyadicInterval(-1, 1)) == 0


def test_dyadic_oscillation_sup():
    r = dyadic_oscillation_sup(CHI01)
    assert r.value == F(1, 2) and r.witness == DyadicInterval(1, 0)
    assert dyadic_oscillation_sup(HAAR).value == 1


def test_constant_on_window_has_zero_bmo():
    f = StepFunction.indicator(-8, 8, 3)
    assert bmo_estimate(f, scales=(4, 2), window=(-4, 4)).value == 0


def test_bmo_of_step_is_at_least_any_grid_cell():
    r = bmo_estimate(CHI01, scales=(4, 4))
    assert r.value == F(1, 2)


@pytest.mark.parametrize("N", [1, 4, 8, 12])
def test_dyadic_log_bmo_bounded(N):
    assert bmo_estimate(dyadic_log(N)).value <= 8


@pytest.mark.parametrize("m", [1, 5, 10])
def test_staircase_balayage_bmo_bounded(m):
    assert bmo_estimate(poisson_staircase(m), scales=(m + 3, 3)).value <= 10


def test_bmo_rejects_bad_ranges():
    with pytest.raises(ValueError):
        bmo_estimate(CHI01, scales=(-3, 1))
    with pytest.raises(ValueError):
        bmo_estimate(CHI01, window=(1, 1))


def test_shifted_grid_is_nested():
    for k in range(-3, 4):
        parent = grid_intervals(k + 1, True, [0])[0]
        kids = [c for c in grid_intervals(k, True, range(-4, 4)) if parent[0] <= c[0] and c[1] <= parent[1]]
        assert len(kids) == 2


def test_lp_norms():
    f = StepFunction.from_pieces([(0, 1, 2), (1, 3, -1)])
    assert l1_norm(f) == 4 and l2_norm_sq(f) == 6
    assert l1_norm(poisson_staircase(1)) == 6
    with pytest.raises(TypeError):
        l1_norm("x")
