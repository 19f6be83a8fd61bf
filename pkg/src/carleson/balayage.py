"""Dyadic and Poisson balayage of measures on the upper half-plane.

The Poisson kernel is ``p_(x,y)(t) = y / (pi ((t - x)**2 + y**2))``.  Every
quantity here (point values, interval means, L1 and L2 norms) is evaluated
from closed-form antiderivatives; :func:`poisson_l1_quadrature` and
:func:`poisson_mean_quadrature` are independent numerical cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .dyadic import DyadicInterval, StepFunction, pow2
from .measure import Measure, ceil_log2

__all__ = [
    "PoissonBalayage",
    "dyadic_balayage",
    "poisson_eval",
    "poisson_antiderivative",
    "poisson_interval_mean",
    "poisson_l1",
    "poisson_l1_quadrature",
    "poisson_mean_quadrature",
    "poisson_l2_sq",
    "whitney_scale",
]


def whitney_scale(y) -> int:
    """The ``k`` with ``2**(k-1) < y <= 2**k``: the scale whose tops hold height ``y``."""
    return ceil_log2(y)


def dyadic_balayage(m: Measure) -> StepFunction:
    """``S^d_m = sum_I chi_I m(T_I) / |I|`` as an exact step function.

    A segment at height ``y`` only meets tops of scale ``whitney_scale(y)``;
    the intervals it covers completely all receive its density, so only the
    two end cells need separate treatment.
    """
    pieces = []
    for a in m.atoms:
        if a.mass == 0:
            continue
        k = whitney_scale(a.y)
        i = DyadicInterval.containing(a.x, k)
        pieces.append((i.left, i.right, a.mass / pow2(k)))
    for s in m.segments:
        if s.density == 0:
            continue
        k = whitney_scale(s.y)
        size = pow2(k)
        first = DyadicInterval(k, math.floor(Fraction(s.a) / size))
        last = DyadicInterval.containing(s.b, k)
        if first == last:
            pieces.append((first.left, first.right, s.density * (s.b - s.a) / size))
            continue
        pieces.append((first.left, first.right, s.density * (first.right - s.a) / size))
        pieces.append((last.left, last.right, s.density * (s.b - last.left) / size))
        if first.right < last.left:
            pieces.append((first.right, last.left, s.density))
    return StepFunction.from_pieces(pieces)


@dataclass(frozen=True)
class PoissonBalayage:
    """Closed-form ``S_m`` as arrays of atom and segment terms."""

    atom_x: np.ndarray
    atom_y: np.ndarray
    atom_w: np.ndarray
    seg_a: np.ndarray
    seg_b: np.ndarray
    seg_y: np.ndarray
    seg_rho: np.ndarray

    @classmethod
    def of(cls, m: Measure) -> PoissonBalayage:
        def arr(vals):
            return np.array([float(v) for v in vals], dtype=float)

        return cls(
            arr(a.x for a in m.atoms),
            arr(a.y for a in m.atoms),
            arr(a.mass for a in m.atoms),
            arr(s.a for s in m.segments),
            arr(s.b for s in m.segments),
            arr(s.y for s in m.segments),
            arr(s.density for s in m.segments),
        )

    @property
    def total_mass(self) -> float:
        return float(self.atom_w.sum() + (self.seg_rho * (self.seg_b - self.seg_a)).sum())

    def feature_points(self) -> np.ndarray:
        """Atom abscissae and segment endpoints, sorted and deduplicated."""
        return np.unique(np.concatenate([self.atom_x, self.seg_a, self.seg_b]))

    def min_height(self) -> float:
        return float(np.concatenate([self.atom_y, self.seg_y]).min())

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for x, y, w in zip(self.atom_x, self.atom_y, self.atom_w):
            out += w * y / (math.pi * ((t - x) ** 2 + y * y))
        for a, b, y, rho in zip(self.seg_a, self.seg_b, self.seg_y, self.seg_rho):
            # atan((b-t)/y) - atan((a-t)/y), in a form free of cancellation
            out += rho / math.pi * np.arctan2((b - a) * y, y * y + (b - t) * (a - t))
        return out

    def antiderivative(self, t):
        """An antiderivative ``F`` with ``F' = S_m`` (additive constant unspecified)."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for x, y, w in zip(self.atom_x, self.atom_y, self.atom_w):
            out += w / math.pi * np.arctan((t - x) / y)
        for a, b, y, rho in zip(self.seg_a, self.seg_b, self.seg_y, self.seg_rho):
            out += rho / math.pi * (_atan_primitive(a - t, y) - _atan_primitive(b - t, y))
        return out

    def integral(self, lo, hi):
        """``int_lo^hi S_m`` via the double primitive of the kernel."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        out = np.zeros(np.broadcast(lo, hi).shape)
        for x, y, w in zip(self.atom_x, self.atom_y, self.atom_w):
            out += w / math.pi * np.arctan2((hi - lo) * y, y * y + (hi - x) * (lo - x))
        for a, b, y, rho in zip(self.seg_a, self.seg_b, self.seg_y, self.seg_rho):
            out += rho * (
                _kernel_second_primitive(b - lo, y)
                - _kernel_second_primitive(b - hi, y)
                - _kernel_second_primitive(a - lo, y)
                + _kernel_second_primitive(a - hi, y)
            )
        return out


def _atan_primitive(s, y):
    """``int atan(s / y) ds = s atan(s / y) - (y / 2) log(s**2 + y**2)``."""
    s = np.asarray(s, dtype=float)
    return s * np.arctan(s / y) - 0.5 * y * np.log(s * s + y * y)


def _kernel_second_primitive(s, y):
    """Second primitive in ``s`` of ``y / (pi (s**2 + y**2))``."""
    return _atan_primitive(s, y) / math.pi


def poisson_eval(m, t):
    """``S_m(t)`` for scalar or array ``t``."""
    pb = m if isinstance(m, PoissonBalayage) else PoissonBalayage.of(m)
    out = pb(t)
    return float(out) if np.ndim(out) == 0 else out


def poisson_antiderivative(m, t):
    pb = m if isinstance(m, PoissonBalayage) else PoissonBalayage.of(m)
    return pb.antiderivative(t)


def poisson_interval_mean(m, interval) -> float:
    """Mean of ``S_m`` over ``[lo, hi]`` from closed-form primitives."""
    lo, hi = (interval.left, interval.right) if isinstance(interval, DyadicInterval) else interval
    lo, hi = float(lo), float(hi)
    if not hi > lo:
        raise ValueError("interval must have positive length")
    pb = m if isinstance(m, PoissonBalayage) else PoissonBalayage.of(m)
    return float(pb.integral(lo, hi)) / (hi - lo)


def poisson_l1(m: Measure):
    """``||S_m||_1``: every kernel has unit integral, so this is the total mass."""
    return m.total_mass()


def _breaks(pb: PoissonBalayage) -> np.ndarray:
    pts = pb.feature_points()
    h = pb.min_height()
    return np.unique(np.concatenate([pts - h, pts, pts + h]))


def poisson_l1_quadrature(m: Measure, rtol: float = 1e-10) -> float:
    """``int S_m`` by adaptive quadrature over the whole line (cross-check path)."""
    pb = PoissonBalayage.of(m)
    f = lambda t: float(pb(t))
    pts = _breaks(pb)
    total = integrate.quad(f, -np.inf, pts[0], epsabs=0, epsrel=rtol, limit=500)[0]
    total += integrate.quad(f, pts[-1], np.inf, epsabs=0, epsrel=rtol, limit=500)[0]
    for lo, hi in zip(pts, pts[1:]):
        total += integrate.quad(f, lo, hi, epsabs=0, epsrel=rtol, limit=500)[0]
    return total


def poisson_mean_quadrature(m: Measure, lo, hi, rtol: float = 1e-10) -> float:
    pb = PoissonBalayage.of(m)
    lo, hi = float(lo), float(hi)
    pts = [p for p in _breaks(pb) if lo < p < hi]
    val = integrate.quad(lambda t: float(pb(t)), lo, hi, points=pts or None, epsabs=0, epsrel=rtol, limit=500)[0]
    return val / (hi - lo)


def _seg_seg(a1, b1, a2, b2, y):
    """``int_(a1,b1) int_(a2,b2) P_y(x1 - x2) dx2 dx1``."""
    F = _kernel_second_primitive
    return F(b1 - a2, y) - F(b1 - b2, y) - F(a1 - a2, y) + F(a1 - b2, y)


def poisson_l2_sq(m: Measure) -> float:
    """``||S_m||_2**2`` in closed form via ``int P_y1(t - x1) P_y2(t - x2) dt = P_(y1+y2)(x1 - x2)``."""
    atoms = [(float(a.x), float(a.y), float(a.mass)) for a in m.atoms]
    segs = [(float(s.a), float(s.b), float(s.y), float(s.density)) for s in m.segments]
    total = 0.0
    for x1, y1, w1 in atoms:
        for x2, y2, w2 in atoms:
            y = y1 + y2
            total += w1 * w2 * y / (math.pi * ((x1 - x2) ** 2 + y * y))
        for a, b, y2, rho in segs:
            y = y1 + y2
            total += 2 * w1 * rho / math.pi * math.atan2((b - a) * y, y * y + (b - x1) * (a - x1))
    for a1, b1, y1, r1 in segs:
        for a2, b2, y2, r2 in segs:
            total += r1 * r2 * float(_seg_seg(a1, b1, a2, b2, y1 + y2))
    return total
