"""Rademacher blocks on staggered intervals: dyadic BMO norm sqrt(N), but the
square function is a dyadic log with bounded BMO norm."""

from carleson import bmo_estimate, bmod_norm_sq, dyadic_log, square_function
from carleson.constructions import counterexample_interval, dyadic_counterexample

print("I_k for |k| <= 3:", {k: tuple(map(str, counterexample_interval(k))) for k in range(-3, 4)})

for N in range(1, 9):
    b = dyadic_counterexample(N)
    s = square_function(b)
    r = bmod_norm_sq(b)
    assert s == dyadic_log(N)
    print(f"N={N}: ||b||^2_BMOd = {r.value} on {r.witness},  BMO(S[b]) ~ {float(bmo_estimate(s).value):.4f}")
