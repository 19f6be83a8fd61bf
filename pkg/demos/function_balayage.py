"""Any step function f gives a measure mu_f (one atom per Haar coefficient)
whose dyadic balayage is the square function S[f]."""

import random

from carleson import (
    StepFunction,
    balayage_measure_from_function,
    bmod_norm_sq,
    carleson_constant,
    dyadic_balayage,
    square_function,
)
from carleson.constructions import random_step_function

rng = random.Random(1)
f = random_step_function(rng, depth=4)
f = f - StepFunction.indicator(0, 1, f.mean_on(0, 1))  # mean zero on (0,1]

mu = balayage_measure_from_function(f)
print(len(mu.atoms), "atoms, total mass", mu.total_mass())
print("S^d(mu_f) == S[f]:", dyadic_balayage(mu) == square_function(f))
print("Carl(mu_f) =", carleson_constant(mu).value, " ||f||^2_BMOd =", bmod_norm_sq(f).value)
