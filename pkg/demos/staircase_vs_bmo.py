"""A staircase of horizontal segments whose Carleson constant grows linearly
while the BMO norm of its Poisson balayage stays put."""

from fractions import Fraction

from carleson import bmo_estimate, carleson_constant, poisson_l1, poisson_staircase

print(f"{'m':>3} {'Carl':>5} {'BMO':>8} {'BMO/Carl':>9} {'L1':>6}")
for m in range(1, 11):
    mu = poisson_staircase(m)
    carl = carleson_constant(mu).value
    bmo = float(bmo_estimate(mu).value)
    print(f"{m:>3} {int(carl):>5} {bmo:8.4f} {bmo / float(carl):9.4f} {int(poisson_l1(mu)):>6}")

# squeezing the picture by h keeps Carl and BMO, and shrinks the L1 norm by h
mu = poisson_staircase(6, h=Fraction(1, 16))
print("h = 1/16, m = 6: Carl", carleson_constant(mu).value, " L1", poisson_l1(mu))
