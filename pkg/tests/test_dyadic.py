from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from carleson import DyadicInterval, StepFunction, haar_coefficients, mean_on, project, relatives, square_function
from carleson.constructions import dyadic_counterexample, dyadic_log
from carleson.dyadic import as_dyadic, dilate, square_function_tail_bound

from conftest import step_functions

HAAR = StepFunction.from_pieces([(0, F(1, 2), 1), (F(1, 2), 1, -1)])
CHI01 = StepFunction.indicator(0, 1)


def test_relatives_grid_arithmetic():
    assert relatives(DyadicInterval(0, 5))["parent"] == DyadicInterval(1, 2)
    assert DyadicInterval(1, 2).left == 4 and DyadicInterval(1, 2).right == 6
    assert relatives(DyadicInterval(0, 0))["sibling"] == DyadicInterval(0, 1)
    p = relatives(DyadicInterval(-1, -1))["parent"]
    assert p == DyadicInterval(0, -1) and (p.left, p.right) == (-1, 0)


@given(st.integers(-6, 6), st.integers(-50, 50))
def test_parent_of_children(k, j):
    i = DyadicInterval(k, j)
    assert i.left_child.parent == i and i.right_child.parent == i
    assert i.sibling.sibling == i
    assert i.left_child.right == i.midpoint


@given(st.integers(-4, 4), st.integers(-20, 20), st.integers(-4, 4), st.integers(-20, 20))
def test_nesting_dichotomy(k1, j1, k2, j2):
    a, b = DyadicInterval(k1, j1), DyadicInterval(k2, j2)
    assert a.disjoint(b) or a.contains(b) or b.contains(a)


def test_containing_is_half_open():
    assert DyadicInterval.containing(1, 0) == DyadicInterval(0, 0)
    assert DyadicInterval.containing(0, 0) == DyadicInterval(0, -1)
    assert DyadicInterval(0, 0).contains_point(1) and not DyadicInterval(0, 0).contains_point(0)


def test_as_dyadic_rejects_other_rationals():
    assert as_dyadic("3/8") == F(3, 8)
    with pytest.raises(ValueError):
        as_dyadic(F(1, 3))


def test_step_function_basics():
    f = StepFunction.from_pieces([(0, 1, 2), (1, 2, 2), (3, 4, -1)])
    assert f.canonical().breakpoints == (0, 2, 3, 4)
    assert f(0) == 0 and f(F(1, 2)) == 2 and f(2) == 2 and f(F(5, 2)) == 0 and f(4) == -1
    assert f.integral() == 3 and f.norm_l1() == 5 and f.norm_l2_sq() == 9
    with pytest.raises(ValueError):
        StepFunction([0, 0], [1])
    with pytest.raises(ValueError):
        StepFunction([0, 1, 2], [1])


def test_mean_on_examples():
    assert mean_on(CHI01, (0, 2)) == F(1, 2)
    assert mean_on(HAAR, (0, 1)) == 0
    assert mean_on(dyadic_log(2), (0, 1)) == 2
    with pytest.raises(ValueError):
        mean_on(CHI01, (1, 1))


def test_haar_coefficients_examples():
    c = haar_coefficients(HAAR)
    assert c[DyadicInterval(0, 0)] == 2
    assert c.b_squared(DyadicInterval(0, 0)) == 1
    assert all(v == 0 for i, v in c.items() if i != DyadicInterval(0, 0))
    c = haar_coefficients(CHI01, top=6)
    for k in range(1, 7):
        assert c[DyadicInterval(k, 0)] == F(2) ** (1 - k)
    assert c[DyadicInterval(0, 0)] == 0
    assert len(haar_coefficients(StepFunction.zero())) == 0


def test_haar_window_too_small():
    with pytest.raises(ValueError):
        haar_coefficients(StepFunction.indicator(0, 4), top=0)


def test_project_examples():
    assert project(HAAR, DyadicInterval(0, 0)) == HAAR
    assert project(CHI01, DyadicInterval(0, 0)).is_zero()
    expect = CHI01 - StepFunction.indicator(0, 2, F(1, 2))
    assert project(CHI01, DyadicInterval(1, 0)) == expect


def test_square_function_examples():
    assert square_function(HAAR) == CHI01
    assert square_function(StepFunction.zero()).is_zero()
    for N in range(1, 7):
        assert square_function(dyadic_counterexample(N)) == dyadic_log(N)


def test_square_function_tail_bound():
    assert square_function_tail_bound(CHI01, top=3) == F(1, 8)


def test_dilate_examples():
    assert dilate(CHI01, 1) == StepFunction.indicator(0, F(1, 2))


@given(step_functions(), st.integers(-3, 3))
def test_dilation_covariance(b, K):
    assert dilate(b, K).norm_l2_sq() == b.norm_l2_sq() / F(2) ** K
    assert square_function(dilate(b, K)) == dilate(square_function(b), K)


@given(step_functions(depth=3, span=2))
def test_parseval_on_finite_tree(b):
    b = b - StepFunction.indicator(0, 2, b.mean_on(0, 2))
    c = haar_coefficients(b, top=1)
    assert sum((c.b_squared(i) for i, _ in c.items() if DyadicInterval(1, 0).contains(i)), F(0)) == b.norm_l2_sq()


@given(step_functions(depth=3, span=1))
def test_bessel(b):
    c = haar_coefficients(b, top=3)
    for i in (DyadicInterval(0, 0), DyadicInterval(2, 0), DyadicInterval(-1, 1)):
        s = sum((c.b_squared(j) for j, _ in c.items() if i.contains(j)), F(0))
        assert s <= b.norm_l2_sq()


@given(step_functions(depth=3, span=1))
def test_square_function_integral_is_energy(b):
    c = haar_coefficients(b, top=2)
    assert square_function(b, top=2).integral() == sum((c.b_squared(i) for i, _ in c.items()), F(0))
