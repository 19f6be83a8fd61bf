"""pi_b* pi_b = pi_S[b] + pi_S[b]* + Diag(b) on a truncated Haar basis, and
near-diagonality of the Gram matrix for Rademacher symbols."""

import random

from carleson import DyadicInterval
from carleson.constructions import random_step_function
from carleson.paraproduct import (
    HaarBasisSlice,
    check_rademacher_diagonality,
    operator_norm_ratios,
    verify_paraproduct_identity,
)

slc = HaarBasisSlice(DyadicInterval(0, 0), 5)
b = random_step_function(random.Random(7), depth=5)
r = verify_paraproduct_identity(b, slc)
print(f"{len(slc)} basis vectors, float residual {r['float_residual']:.2e}, exact residual {r['exact_residual']}")

norms = operator_norm_ratios(b, slc)
for key in ("pi_b", "pi_Sb", "gram", "gram_minus_diag", "bmod_b", "bmod_Sb"):
    print(f"  {key:16s} {norms[key]:.4f}")

rad = check_rademacher_diagonality(4, DyadicInterval(0, 0), depth=6)
print("Rademacher symbol: interior off-diagonal", rad["interior_offdiag_max"],
      " boundary", round(rad["boundary_offdiag_max"], 4))
