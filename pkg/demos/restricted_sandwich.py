"""Carleson constant against the balayages of the measure cut down to
Carleson boxes, dyadic and Poisson."""

from carleson import Atom, Measure, poisson_staircase
from carleson.characterization import sandwich

cases = {"atom": Measure([Atom(0.5, 0.5, 1)])}
cases.update({f"staircase m={m}": poisson_staircase(m) for m in (1, 4, 8)})

for name, mu in cases.items():
    rep = sandwich(mu)
    print(f"{name:15s} Carl={rep.carl}  sup={rep.sup_restricted:.4f} on {rep.witness}  "
          f"Carl/sup={rep.lower_ratio:.3f}  D/Carl={rep.balay_lower['ratio']:.3f}  "
          f"{'PASS' if rep.passed else 'FAIL'}")
