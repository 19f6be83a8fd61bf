from fractions import Fraction as F

import pytest

from carleson import Atom, StepFunction, balayage_measure_from_function, carleson_constant, dyadic_log, rademacher
from carleson.constructions import (
    counterexample_interval,
    counterexample_measure,
    dyadic_counterexample,
    epsilon_schedule_dyadic,
    epsilon_schedule_staircase,
    normalized_staircase,
    poisson_staircase,
)
from carleson.dyadic import square_function


def test_rademacher_examples():
    q = F(1, 4)
    assert rademacher(1, (0, 1)) == StepFunction.from_pieces([(0, F(1, 2), -1), (F(1, 2), 1, 1)])
    assert rademacher(2, (0, 1)) == StepFunction.from_pieces(
        [(0, q, -1), (q, 2 * q, 1), (2 * q, 3 * q, -1), (3 * q, 1, 1)]
    )
    with pytest.raises(ValueError):
        rademacher(0, (0, 1))


def test_rademacher_orthonormal():
    r = [rademacher(n, (0, 1)) for n in range(1, 6)]
    for a in range(5):
        for b in range(5):
            assert (r[a] * r[b]).integral() == (1 if a == b else 0)


def test_counterexample_intervals_partition():
    ivs = sorted(counterexample_interval(k) for k in range(-12, 12))
    for (a0, b0), (a1, _) in zip(ivs, ivs[1:]):
        assert b0 == a1
    assert counterexample_interval(-1) == (-2, 0)
    assert counterexample_interval(3) == (7, 15)
    assert counterexample_interval(-3) == (-8, -4)


def test_counterexample_N1_is_signed_haar():
    assert dyadic_counterexample(1) == rademacher(1, (0, 1))


def test_dyadic_log_examples():
    assert dyadic_log(0).is_zero()
    d = dyadic_log(2)
    assert d(F(1, 2)) == 2 and d(2) == 1 and d(-1) == 1 and d(5) == 0 and d(F(-1, 8)) == 1 and d(-3) == 0


@pytest.mark.parametrize("N", range(1, 8))
def test_dyadic_log_energy(N):
    lengths = {k: counterexample_interval(k)[1] - counterexample_interval(k)[0] for k in range(-N, N + 1)}
    formula = sum((N - k) ** 2 * (lengths[k] + (lengths[-k] if k else 0)) for k in range(N + 1))
    assert square_function(dyadic_counterexample(N)).norm_l2_sq() == formula


def test_mu_f_examples():
    haar = StepFunction.from_pieces([(0, F(1, 2), 1), (F(1, 2), 1, -1)])
    assert balayage_measure_from_function(haar).atoms == (Atom(F(1, 2), F(3, 4), 1),)
    assert balayage_measure_from_function(StepFunction.zero()).is_empty()


def test_staircase_shape():
    m0 = poisson_staircase(0)
    assert len(m0.segments) == 1 and m0.total_mass() == 2
    with pytest.raises(ValueError):
        poisson_staircase(-1)
    with pytest.raises(ValueError):
        poisson_staircase(2, 0)


@pytest.mark.parametrize("N,K", [(2, 0), (4, 3)])
def test_counterexample_measure_is_normalized(N, K):
    assert carleson_constant(counterexample_measure(N, K)).value == 1


@pytest.mark.parametrize("m,K", [(3, 0), (6, 2)])
def test_normalized_staircase(m, K):
    assert carleson_constant(normalized_staircase(m, K)).value == 1


def test_epsilon_schedules():
    assert epsilon_schedule_dyadic(2) == (9, 6)
    assert epsilon_schedule_staircase(1) == (20, 10)
    N, _ = epsilon_schedule_dyadic(2)
    assert 8 / N < 1
    with pytest.raises(ValueError):
        epsilon_schedule_dyadic(0.5)
    with pytest.raises(ValueError):
        epsilon_schedule_staircase(0)
