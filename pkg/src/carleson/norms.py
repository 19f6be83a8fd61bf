"""Dyadic-BMO, grid-sup BMO estimation, L1/L2 norms and mean oscillation."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .balayage import PoissonBalayage, poisson_l2_sq
from .dyadic import (
    DyadicInterval,
    StepFunction,
    _coefficient,
    _default_top,
    _nodes_by_scale,
    pow2,
)
from .measure import Measure, NormReport

__all__ = [
    "bmod_norm_sq",
    "dyadic_oscillation_sup",
    "bmo_estimate",
    "mean_oscillation",
    "l1_norm",
    "l2_norm_sq",
    "grid_intervals",
]

DEFAULT_SCALES = (12, 12)


def bmod_norm_sq(b: StepFunction) -> NormReport:
    """``sup_I |I|^{-1} sum_{J subset I} b_J**2`` over all dyadic ``I``, exactly.

    Subtree energies are accumulated bottom-up over the intervals that carry
    an interior breakpoint.  Above the support the two ancestor chains are
    followed until the Bessel tail ``||b||_2**2 / |I|`` drops to the running
    maximum, which bounds every remaining ancestor.
    """
    if b.is_zero():
        return NormReport(Fraction(0), "exact-rational", None, {})
    top = _default_top(b)
    nodes = _nodes_by_scale(b, top)
    energy: dict[DyadicInterval, Fraction] = {}
    best, witness = Fraction(-1), None

    def offer(i, e):
        nonlocal best, witness
        r = e / i.length
        if r > best:
            best, witness = r, i

    for k in sorted(nodes):
        for j in sorted(nodes[k]):
            i = DyadicInterval(k, j)
            c = _coefficient(b, i)
            e = i.length * c * c / 4
            e += energy.get(i.left_child, 0) + energy.get(i.right_child, 0)
            energy[i] = e
            offer(i, e)
    norm2 = b.norm_l2_sq()
    chains = {pos: energy.get(DyadicInterval(top, pos), Fraction(0)) for pos in (-1, 0)}
    k = top
    while norm2 / pow2(k) > best:
        k += 1
        for pos in (-1, 0):
            i = DyadicInterval(k, pos)
            c = _coefficient(b, i)
            chains[pos] += i.length * c * c / 4
            offer(i, chains[pos])
    return NormReport(best, "exact-rational", witness, {"top": top, "ancestor_top": k})


def dyadic_oscillation_sup(f: StepFunction) -> NormReport:
    """``sup_I |I|^{-1} int_I |f - <f>_I|`` over all dyadic ``I``, exactly.

    Only intervals with an interior breakpoint oscillate.  Above the support
    the oscillation is at most ``2 ||f||_1 / |I|``, which ends the ancestor scan.
    """
    if f.is_zero():
        return NormReport(Fraction(0), "exact-rational", None, {})
    top = _default_top(f)
    best, witness = Fraction(0), None
    nodes = _nodes_by_scale(f, top)
    for k in sorted(nodes):
        for j in sorted(nodes[k]):
            i = DyadicInterval(k, j)
            v = _step_oscillation(f, i.left, i.right)
            if v > best:
                best, witness = v, i
    mass = f.norm_l1()
    k = top
    while 2 * mass / pow2(k) > best:
        k += 1
        for pos in (-1, 0):
            i = DyadicInterval(k, pos)
            v = _step_oscillation(f, i.left, i.right)
            if v > best:
                best, witness = v, i
    return NormReport(best, "exact-rational", witness, {"top": top, "ancestor_top": k, "form": "L1"})


# ---------------------------------------------------------------- oscillation


def _step_oscillation(f: StepFunction, lo, hi):
    lo, hi = Fraction(lo), Fraction(hi)
    if hi <= lo:
        raise ValueError("interval must have positive length")
    c = f.mean_on(lo, hi)
    pts = [lo, *f.interior_breakpoints(lo, hi), hi]
    total = 0
    for a, b in zip(pts, pts[1:]):
        total += abs(f(b) - c) * (b - a)
    return total / (hi - lo)


def _poisson_oscillations(pb: PoissonBalayage, lo, hi, samples: int = 64) -> np.ndarray:
    """Mean oscillation of ``S_m`` on each ``[lo[i], hi[i]]``, as a certified lower bound.

    Each interval is cut into ``samples`` cells, cells where ``S_m - mean``
    changes sign are split at the interpolated root, and the exact cell
    integrals of ``S_m - mean`` are summed in absolute value.  The sum of
    ``|int_cell g|`` never exceeds ``int |g|``.
    """
    lo = np.asarray(lo, dtype=float)[:, None]
    hi = np.asarray(hi, dtype=float)[:, None]
    width = hi - lo
    s = lo + width * np.linspace(0.0, 1.0, samples + 1)[None, :]
    F = pb.antiderivative(s)
    mean = (F[:, -1:] - F[:, :1]) / width
    g = pb(s) - mean
    dF = np.diff(F, axis=1) - mean * np.diff(s, axis=1)
    total = np.abs(dF)
    flip = (g[:, :-1] * g[:, 1:]) < 0
    if flip.any():
        rows, cols = np.nonzero(flip)
        g0, g1 = g[rows, cols], g[rows, cols + 1]
        s0, s1 = s[rows, cols], s[rows, cols + 1]
        r = s0 + (s1 - s0) * g0 / (g0 - g1)
        Fr = pb.antiderivative(r)
        m = mean[rows, 0]
        left = Fr - F[rows, cols] - m * (r - s0)
        right = F[rows, cols + 1] - Fr - m * (s1 - r)
        total[rows, cols] = np.abs(left) + np.abs(right)
    return total.sum(axis=1) / width[:, 0]


def mean_oscillation(f, interval, samples: int = 256):
    """``|I|^{-1} int_I |f - <f>_I|``; exact for step functions."""
    lo, hi = (interval.left, interval.right) if isinstance(interval, DyadicInterval) else interval
    if isinstance(f, StepFunction):
        return _step_oscillation(f, lo, hi)
    pb = f if isinstance(f, PoissonBalayage) else PoissonBalayage.of(f)
    if not float(hi) > float(lo):
        raise ValueError("interval must have positive length")
    return float(_poisson_oscillations(pb, [lo], [hi], samples)[0])


# ---------------------------------------------------------------- grid sup


def grid_offset(k: int, shifted: bool) -> Fraction:
    """Offset of the scale-``2**k`` cells; the shifted family is nested across scales."""
    if not shifted:
        return Fraction(0)
    return (-1) ** (k % 2) * pow2(k) / 3


def grid_intervals(k: int, shifted: bool, positions) -> list[tuple[Fraction, Fraction]]:
    o, size = grid_offset(k, shifted), pow2(k)
    return [(o + j * size, o + (j + 1) * size) for j in positions]


def _position_of(x, k: int, shifted: bool) -> tuple[int, bool]:
    """Cell index containing ``x`` and whether ``x`` lies strictly inside it."""
    u = (Fraction(x) - grid_offset(k, shifted)) / pow2(k)
    j = math.floor(u)
    return j, u != j


def _hull(f):
    if isinstance(f, StepFunction):
        sup = f.support()
        return sup
    pts = f.feature_points()
    return (Fraction(float(pts[0])), Fraction(float(pts[-1])))


def _step_candidates(f: StepFunction, k: int, shifted: bool) -> set[int]:
    out = set()
    for x in f.breakpoints:
        j, inside = _position_of(x, k, shifted)
        if inside:
            out.add(j)
    return out


def _poisson_candidates(pb: PoissonBalayage, k: int, shifted: bool, radius: int) -> set[int]:
    out = set()
    for p in pb.feature_points():
        j, _ = _position_of(Fraction(float(p)), k, shifted)
        out.update(range(j - radius, j + radius + 1))
    return out


def bmo_estimate(f, scales=DEFAULT_SCALES, window=None, samples: int = 64, radius: int = 4) -> NormReport:
    """Grid-sup estimate of ``||f||_BMO`` (L1 mean oscillation).

    The supremum runs over the standard dyadic grid and the one-third shifted
    grid at scales ``2**-L .. 2**M`` (``scales = (L, M)``), restricted to cells
    inside ``window``.  For step functions only cells with an interior
    breakpoint can oscillate and their oscillation is exact.  For Poisson
    balayages the cells within ``radius`` cells of an atom or segment
    endpoint are scanned, each with a certified lower bound, so the result is
    always a lower bound of the true norm.
    """
    L, M = scales
    if -L > M:
        raise ValueError("empty scale range")
    step = isinstance(f, StepFunction)
    if not step and isinstance(f, Measure):
        f = PoissonBalayage.of(f)
    hull = _hull(f)
    params = {"scales": [-L, M], "grids": ["standard", "one-third"]}
    if hull is None:
        return NormReport(Fraction(0), "grid-sup", None, params)
    if window is None:
        pad = pow2(M)
        window = (hull[0] - pad, hull[1] + pad)
    wlo, whi = Fraction(window[0]), Fraction(window[1])
    if not wlo < whi:
        raise ValueError("empty window")
    params["window"] = [str(wlo), str(whi)]
    best, witness = 0, None
    for k in range(-L, M + 1):
        for shifted in (False, True):
            if step:
                pos = _step_candidates(f, k, shifted)
            else:
                pos = _poisson_candidates(f, k, shifted, radius)
            cells = [(a, b) for a, b in grid_intervals(k, shifted, sorted(pos)) if wlo <= a and b <= whi]
            if not cells:
                continue
            if step:
                vals = [_step_oscillation(f, a, b) for a, b in cells]
            else:
                vals = _poisson_oscillations(
                    f, [float(a) for a, _ in cells], [float(b) for _, b in cells], samples
                ).tolist()
            idx = max(range(len(vals)), key=vals.__getitem__)
            if vals[idx] > best:
                best, witness = vals[idx], cells[idx]
    if step:
        params["method_detail"] = "exact oscillation on breakpoint cells"
    else:
        params.update(samples=samples, radius=radius)
    return NormReport(best, "grid-sup", witness, params)


# ---------------------------------------------------------------- Lp


def l1_norm(f):
    if isinstance(f, StepFunction):
        return f.norm_l1()
    if isinstance(f, Measure):
        return f.total_mass()
    if isinstance(f, PoissonBalayage):
        return f.total_mass
    raise TypeError(f"unsupported {type(f).__name__}")


def l2_norm_sq(f):
    if isinstance(f, StepFunction):
        return f.norm_l2_sq()
    if isinstance(f, Measure):
        return poisson_l2_sq(f)
    raise TypeError(f"unsupported {type(f).__name__}")
