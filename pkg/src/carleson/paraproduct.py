"""The dyadic paraproduct ``pi_b f = sum_I h_I b_I <f>_I`` and its algebra.

Function-level operators are exact: ``h_I b_I = (c_I / 2)(chi_{I_left} -
chi_{I_right})`` and ``b_I g_I / |I| = c_I(b) c_I(g) / 4`` are rational.
Matrices on a finite Haar slice come in two flavours: floating (scipy
sparse, true Haar normalisation) and exact (rational, conjugated by
``diag(|I|^{1/2})`` so no square roots appear).  The conjugation is symmetric,
so ``G = P + P^T + D`` holds for one iff it holds for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import sparse

from .dyadic import (
    DyadicInterval,
    StepFunction,
    _default_top,
    covering_scale,
    haar_coefficients,
    project,
    square_function,
)
from .norms import bmod_norm_sq

__all__ = [
    "HaarBasisSlice",
    "apply_paraproduct",
    "apply_adjoint",
    "diag_coefficients",
    "paraproduct_matrices",
    "exact_matrices",
    "verify_paraproduct_identity",
    "verify_diagpart",
    "diagpart_orientation",
    "rademacher_symbol",
    "check_rademacher_diagonality",
    "spectral_norm",
    "operator_norm_ratios",
]


@dataclass(frozen=True)
class HaarBasisSlice:
    """All ``J`` inside ``window`` with ``|J| >= |window| 2**-depth``."""

    window: DyadicInterval
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")

    @property
    def finest(self) -> int:
        return self.window.scale - self.depth

    @property
    def basis(self) -> list[DyadicInterval]:
        return list(_basis(self.window, self.depth))

    @property
    def index(self) -> dict[DyadicInterval, int]:
        return {j: n for n, j in enumerate(self.basis)}

    def __len__(self) -> int:
        return 2 ** (self.depth + 1) - 1

    def __contains__(self, i: DyadicInterval) -> bool:
        return self.finest <= i.scale and self.window.contains(i)

    def strict_ancestors(self, i: DyadicInterval) -> list[DyadicInterval]:
        return [i.ancestor(k) for k in range(i.scale + 1, self.window.scale + 1)]

    def top_scale(self, b: StepFunction) -> int:
        """A top scale covering both ``b``'s support and the window."""
        w = covering_scale(self.window.left, self.window.right)
        return max(w, _default_top(b))


@lru_cache(maxsize=64)
def _basis(window: DyadicInterval, depth: int) -> tuple[DyadicInterval, ...]:
    out = []
    for d in range(depth + 1):
        k = window.scale - d
        first = window.pos << d
        out.extend(DyadicInterval(k, first + p) for p in range(1 << d))
    return tuple(out)


# ---------------------------------------------------------------- functions


def _top_for(*fs: StepFunction) -> int:
    return max(_default_top(f) for f in fs)


def apply_paraproduct(b: StepFunction, f: StepFunction, top: int | None = None) -> StepFunction:
    """``sum_{|I| <= 2**top} h_I b_I <f>_I`` exactly."""
    if top is None:
        top = _top_for(b, f)
    coeffs = haar_coefficients(b, top)
    haar_coefficients(f, top)  # support check
    pieces = []
    for i, c in coeffs.items():
        avg = f.mean_on(i.left, i.right)
        if avg == 0:
            continue
        half = c * avg / 2
        mid = i.midpoint
        pieces.append((i.left, mid, half))
        pieces.append((mid, i.right, -half))
    return StepFunction.from_pieces(pieces)


def apply_adjoint(b: StepFunction, g: StepFunction, top: int | None = None) -> StepFunction:
    """``pi_b^* g = sum_I b_I g_I chi_I / |I|`` exactly."""
    if top is None:
        top = _top_for(b, g)
    cb = haar_coefficients(b, top)
    cg = haar_coefficients(g, top)
    pieces = []
    for i, c in cb.items():
        d = cg[i]
        if d:
            pieces.append((i.left, i.right, c * d / 4))
    return StepFunction.from_pieces(pieces)


def diag_coefficients(b: StepFunction, slc: HaarBasisSlice) -> dict[DyadicInterval, Fraction]:
    """``||pi_b h_I||**2 = |I|^{-1} sum_{J strictly inside I} b_J**2`` for each ``I`` in the slice."""
    coeffs = haar_coefficients(b, slc.top_scale(b))
    below = {i: Fraction(0) for i in slc.basis}
    for j, c in coeffs.items():
        bj2 = j.length * c * c / 4
        if slc.window.contains(j):
            for i in slc.strict_ancestors(j):
                below[i] += bj2
    return {i: e / i.length for i, e in below.items()}


# ---------------------------------------------------------------- matrices


def _slice_coefficients(b: StepFunction, slc: HaarBasisSlice) -> dict[DyadicInterval, Fraction]:
    coeffs = haar_coefficients(b, slc.top_scale(b))
    inside = {}
    for j, c in coeffs.items():
        if slc.window.contains(j):
            if j.scale < slc.finest:
                raise ValueError(
                    f"coefficient at {j} lies below the slice; truncation would break the identity"
                )
            inside[j] = c
    return inside


def _sq_coefficients(b: StepFunction, slc: HaarBasisSlice) -> dict[DyadicInterval, Fraction]:
    top = slc.top_scale(b)
    s = square_function(b, top)
    return {j: c for j, c in haar_coefficients(s, top).items() if j in slc}


def exact_matrices(b: StepFunction, slc: HaarBasisSlice):
    """Rational ``(G, P, D)`` conjugated by ``diag(|I|^{1/2})``, as sparse dicts.

    ``G = M^T diag(1/|K|) M`` with ``M[K, J] = (|K| c_K / 2) sign_J(K)`` is
    assembled from the coefficients of ``b``; ``P[I, J] = (|I| s_I / 2)
    sign_J(I)`` from the coefficients ``s_I`` of ``S[b]``; ``D[I] = sum_{K
    strictly inside I} b_K**2``.
    """
    cb = _slice_coefficients(b, slc)
    G: dict[tuple, Fraction] = {}
    D = {i: Fraction(0) for i in slc.basis}
    for k, c in cb.items():
        bk2 = k.length * c * c / 4
        anc = slc.strict_ancestors(k)
        signs = [j.sign_on(k) for j in anc]
        for j1, s1 in zip(anc, signs):
            D[j1] += bk2
            for j2, s2 in zip(anc, signs):
                G[j1, j2] = G.get((j1, j2), 0) + bk2 * s1 * s2
    P: dict[tuple, Fraction] = {}
    for i, c in _sq_coefficients(b, slc).items():
        for j in slc.strict_ancestors(i):
            P[i, j] = i.length * c / 2 * j.sign_on(i)
    return G, P, D


def exact_identity_residual(b: StepFunction, slc: HaarBasisSlice) -> Fraction:
    G, P, D = exact_matrices(b, slc)
    rhs: dict[tuple, Fraction] = {}
    for (i, j), v in P.items():
        rhs[i, j] = rhs.get((i, j), 0) + v
        rhs[j, i] = rhs.get((j, i), 0) + v
    for i, v in D.items():
        rhs[i, i] = rhs.get((i, i), 0) + v
    keys = set(G) | set(rhs)
    return max((abs(G.get(k, 0) - rhs.get(k, 0)) for k in keys), default=Fraction(0))


def paraproduct_matrices(b: StepFunction, slc: HaarBasisSlice):
    """Floating sparse ``(M, P, D)``: matrices of ``pi_b``, ``pi_{S[b]}`` and ``Diag(b)``.

    Rows and columns follow ``slc.basis``.  ``M[K, J] = b_K <h_J>_K`` is
    nonzero only for ``K`` strictly inside ``J``.
    """
    idx = slc.index
    n = len(idx)

    def assemble(coeffs):
        rows, cols, vals = [], [], []
        for k, c in coeffs.items():
            bk = math.sqrt(float(k.length)) * float(c) / 2
            for j in slc.strict_ancestors(k):
                rows.append(idx[k])
                cols.append(idx[j])
                vals.append(bk * j.sign_on(k) / math.sqrt(float(j.length)))
        return sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))

    M = assemble(_slice_coefficients(b, slc))
    P = assemble(_sq_coefficients(b, slc))
    diag = diag_coefficients(b, slc)
    D = sparse.diags([float(diag[i]) for i in slc.basis]).tocsr()
    return M, P, D


def verify_paraproduct_identity(b: StepFunction, slc: HaarBasisSlice, tol: float = 1e-9) -> dict:
    """Residuals of ``pi_b^* pi_b = pi_{S[b]} + pi_{S[b]}^* + Diag(b)`` on the slice."""
    M, P, D = paraproduct_matrices(b, slc)
    G = (M.T @ M).toarray()
    rhs = (P + P.T + D).toarray()
    floating = float(np.abs(G - rhs).max()) if G.size else 0.0
    exact = exact_identity_residual(b, slc)
    lower = sparse.tril(M, k=-1).nnz == M.nnz  # row interval strictly inside column interval
    return {
        "float_residual": floating,
        "exact_residual": exact,
        "structure_ok": lower,
        "passed": floating <= tol and exact == 0 and lower,
    }


# ---------------------------------------------------------------- Gram action on a single Haar vector


def _normalized_haar(i: DyadicInterval) -> StepFunction:
    """``|I|^{1/2} h_I = chi_{I_left} - chi_{I_right}``."""
    return StepFunction.from_pieces([(i.left, i.midpoint, 1), (i.midpoint, i.right, -1)])


def _gram_on_haar(b: StepFunction, i: DyadicInterval) -> StepFunction:
    """``|I|^{1/2} pi_b^* pi_b h_I``."""
    h = _normalized_haar(i)
    top = max(_top_for(b), covering_scale(i.left, i.right))
    return apply_adjoint(b, apply_paraproduct(b, h, top), top)


def _half_square_functions(b: StepFunction, i: DyadicInterval) -> tuple[StepFunction, StepFunction]:
    """``sum_{J in half} chi_J b_J**2 / |J|`` for the left and right halves of ``I``."""
    return square_function(project(b, i.left_child)), square_function(project(b, i.right_child))


@lru_cache(maxsize=1)
def diagpart_orientation() -> int:
    """``+1`` if the plus half is the left child under this module's Haar sign, else ``-1``.

    Probed once with a single-coefficient symbol.
    """
    b = _normalized_haar(DyadicInterval(0, 0))
    i = DyadicInterval(1, 0)
    lhs = _gram_on_haar(b, i)
    left, right = _half_square_functions(b, i)
    if lhs == left - right:
        return 1
    if lhs == right - left:
        return -1
    raise RuntimeError("orientation probe matched neither sign")


def verify_diagpart(b: StepFunction, i: DyadicInterval) -> dict:
    """Compare ``|I|^{1/2} pi_b^* pi_b h_I`` with ``sum_{J in I+} ... - sum_{J in I-} ...``."""
    lhs = _gram_on_haar(b, i)
    left, right = _half_square_functions(b, i)
    rhs = left - right if diagpart_orientation() == 1 else right - left
    diff = lhs - rhs
    residual = max((abs(v) for v in diff.values), default=Fraction(0))
    return {"lhs": lhs, "rhs": rhs, "residual": residual, "passed": residual == 0}


# ---------------------------------------------------------------- Rademacher symbols


def rademacher_symbol(N: int, window: DyadicInterval) -> StepFunction:
    """``chi_W sum_{n=1}^N r_n``."""
    from .constructions import rademacher

    total = StepFunction()
    for n in range(1, N + 1):
        total = total + rademacher(n, (window.left, window.right))
    return total


def check_rademacher_diagonality(N: int, window: DyadicInterval, depth: int | None = None) -> dict:
    """Off-diagonal size of ``pi_b^* pi_b`` for ``b = chi_W sum_{n<=N} r_n``.

    ``depth`` counts levels below ``W``.  The slice is rooted two levels above
    ``W`` so the cutoff at the edge of ``W`` is visible: columns inside ``W``
    are interior, the two ancestor columns are the boundary.
    """
    if N < 1:
        raise ValueError("N must be positive")
    finest_needed = 1 - N
    if depth is None:
        depth = max(window.scale - finest_needed, 0)
    if window.scale - depth > finest_needed:
        raise ValueError("N exceeds slice depth")
    b = rademacher_symbol(N, window)
    slc = HaarBasisSlice(window.ancestor(window.scale + 2), depth + 2)
    G, _, _ = exact_matrices(b, slc)
    interior, boundary = Fraction(0), 0.0
    for (r, c), v in G.items():
        if r == c or v == 0:
            continue
        if window.contains(c):
            interior = max(interior, abs(v))
        else:
            boundary = max(boundary, abs(float(v)) / math.sqrt(float(r.length * c.length)))
    return {
        "interior_offdiag_max": interior,
        "boundary_offdiag_max": boundary,
        "passed": interior == 0,
    }


# ---------------------------------------------------------------- norms


def spectral_norm(A, tol: float = 1e-8, max_iter: int = 10_000, seed: int = 0) -> float:
    """``||A||_2`` by power iteration on ``A^T A`` from a fixed-seed start vector."""
    n = A.shape[1]
    if n == 0:
        return 0.0
    x = np.random.default_rng(seed).standard_normal(n)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = A.T @ (A @ x)
        new = float(np.linalg.norm(y))
        if new == 0.0:
            return 0.0
        x = y / new
        if abs(new - lam) <= tol * new:
            return math.sqrt(new)
        lam = new
    raise RuntimeError("power iteration did not converge")


def operator_norm_ratios(b: StepFunction, slc: HaarBasisSlice) -> dict:
    """Truncated operator norms next to the corresponding dyadic-BMO norms."""
    M, P, D = paraproduct_matrices(b, slc)
    G = (M.T @ M).tocsr()
    out = {
        "pi_b": spectral_norm(M),
        "pi_Sb": spectral_norm(P),
        "pi_Sb_sym": spectral_norm((P + P.T).tocsr()),
        "gram": spectral_norm(G),
        "gram_minus_diag": spectral_norm((G - D).tocsr()),
        "bmod_b": math.sqrt(float(bmod_norm_sq(b).value)),
    }
    top = slc.top_scale(b)
    out["bmod_Sb"] = math.sqrt(float(bmod_norm_sq(square_function(b, top)).value))
    ratios = {}
    if out["bmod_b"] > 0:
        ratios["pi_b/bmod_b"] = out["pi_b"] / out["bmod_b"]
    if out["bmod_Sb"] > 0:
        ratios["pi_Sb/bmod_Sb"] = out["pi_Sb"] / out["bmod_Sb"]
        ratios["pi_Sb_sym/bmod_Sb"] = out["pi_Sb_sym"] / out["bmod_Sb"]
    out["ratios"] = ratios
    return out
