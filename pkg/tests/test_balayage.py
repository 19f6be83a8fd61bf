import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given

from carleson import Atom, Measure, Segment, StepFunction, dyadic_balayage, poisson_eval, poisson_interval_mean, poisson_l1
from carleson.balayage import (
    PoissonBalayage,
    poisson_antiderivative,
    poisson_l1_quadrature,
    poisson_l2_sq,
    poisson_mean_quadrature,
    whitney_scale,
)
from carleson.constructions import balayage_measure_from_function, poisson_staircase
from carleson.dyadic import square_function
from carleson.measure import scale_measure

from conftest import measures, step_functions


def layer(j):
    return Measure((), [Segment(-(F(2) ** j), F(2) ** j, F(2) ** -j, 1)])


def test_whitney_scale():
    assert whitney_scale(F(6, 10)) == 0
    assert whitney_scale(1) == 0
    assert whitney_scale(F(1, 2)) == -1
    assert whitney_scale(F(3, 4)) == 0


def test_dyadic_balayage_atom():
    w = F(5, 3)
    assert dyadic_balayage(Measure([Atom(F(3, 10), F(3, 5), w)])) == StepFunction.indicator(0, 1, w)


def test_dyadic_balayage_staircase():
    for m in range(6):
        expect = StepFunction()
        for j in range(m + 1):
            expect = expect + StepFunction.indicator(-(F(2) ** j), F(2) ** j)
        assert dyadic_balayage(poisson_staircase(m)) == expect


@given(step_functions(depth=3, span=2))
def test_dyadic_balayage_of_mu_f_is_square_function(f):
    assert dyadic_balayage(balayage_measure_from_function(f)) == square_function(f)


@given(measures())
def test_dyadic_balayage_preserves_mass(mu):
    assert dyadic_balayage(mu).integral() == mu.total_mass()


@pytest.mark.parametrize("j", range(0, 8))
def test_layer_value_at_origin(j):
    v = float(poisson_eval(layer(j), 0.0))
    assert v == pytest.approx(2 / math.pi * math.atan(4.0**j), rel=1e-13)
    assert v <= 1


@pytest.mark.parametrize("j", range(0, 6))
def test_layer_far_field(j):
    t = np.linspace(2.0 ** (j + 1), 2.0 ** (j + 6), 200)
    assert np.all(poisson_eval(layer(j), t) <= 2.0 ** (1 - 2 * j) / math.pi + 1e-15)
    assert np.all(poisson_eval(layer(j), -t) <= 2.0 ** (1 - 2 * j) / math.pi + 1e-15)


def test_atom_peak():
    x, y, w = 0.375, 0.125, 2.5
    assert float(poisson_eval(Measure([Atom(F(3, 8), F(1, 8), F(5, 2))]), x)) == pytest.approx(w / (math.pi * y), rel=1e-14)


def test_interval_means_of_atom():
    mu = Measure([Atom(F(1, 2), F(1, 4), 1)])
    near = poisson_interval_mean(mu, (0, 1))
    far = poisson_interval_mean(mu, (2, 3))
    assert near == pytest.approx(2 / math.pi * math.atan(2), rel=1e-13)
    assert far == pytest.approx((math.atan(10) - math.atan(6)) / math.pi, rel=1e-12)
    assert round(near, 4) == 0.7048 and round(far, 4) == 0.0208


def test_interval_mean_decays():
    mu = poisson_staircase(2)
    means = [poisson_interval_mean(mu, (d, d + 1)) for d in (10, 20, 40, 80)]
    assert all(a > b for a, b in zip(means, means[1:]))
    assert means[-1] <= mu.total_mass() / (math.pi * 75**2)


@given(measures())
def test_interval_mean_matches_quadrature(mu):
    assert poisson_interval_mean(mu, (-1, 2)) == pytest.approx(poisson_mean_quadrature(mu, -1, 2), rel=1e-8, abs=1e-12)


def test_antiderivative_differentiates_back():
    mu = Measure([Atom(F(1, 3), F(1, 5), 2)], [Segment(-1, 2, F(1, 4), F(3, 2))])
    t = np.linspace(-3, 4, 50)
    h = 1e-6
    deriv = (poisson_antiderivative(mu, t + h) - poisson_antiderivative(mu, t - h)) / (2 * h)
    assert np.allclose(deriv, poisson_eval(mu, t), rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize("m", range(0, 8))
def test_staircase_l1(m):
    assert poisson_l1(poisson_staircase(m)) == 2 ** (m + 2) - 2
    assert poisson_l1_quadrature(poisson_staircase(m)) == pytest.approx(2 ** (m + 2) - 2, rel=1e-6)


@pytest.mark.parametrize("h", [F(1, 2), F(1, 16)])
def test_scaled_staircase_l1(h):
    assert poisson_l1(scale_measure(poisson_staircase(3), h)) == h * (2**5 - 2)


def test_unit_atom_l1():
    mu = Measure([Atom(0, 1, 1)])
    assert poisson_l1(mu) == 1
    assert poisson_l1_quadrature(mu) == pytest.approx(1, rel=1e-8)


def test_l2_of_atom():
    # ||P_y||_2^2 = 1 / (2 pi y)
    assert poisson_l2_sq(Measure([Atom(0, F(1, 4), 1)])) == pytest.approx(2 / math.pi, rel=1e-12)


def test_float_measure_accepted():
    mu = Measure([Atom(0.5, 0.25, 1.0)])
    assert PoissonBalayage.of(mu).total_mass == 1.0
