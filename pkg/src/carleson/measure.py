"""Positive measures on the upper half-plane built from atoms and horizontal segments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import DyadicInterval, pow2

__all__ = [
    "Atom",
    "Segment",
    "Rect",
    "Region",
    "Measure",
    "NormReport",
    "ceil_log2",
    "top_mass",
    "box_mass",
    "restrict",
    "carleson_constant",
    "carleson_scan",
    "stable_scale",
    "scale_measure",
    "translate_measure",
]

INF = math.inf


@dataclass(frozen=True)
class Atom:
    x: object
    y: object
    mass: object

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("atom height must be positive")
        if self.mass < 0:
            raise ValueError("atom mass must be nonnegative")


@dataclass(frozen=True)
class Segment:
    """Lebesgue measure with linear ``density`` on ``(a, b] x {y}``."""

    a: object
    b: object
    y: object
    density: object = 1

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("segment needs a < b")
        if not self.y > 0:
            raise ValueError("segment height must be positive")
        if self.density < 0:
            raise ValueError("segment density must be nonnegative")

    @property
    def mass(self):
        return self.density * (self.b - self.a)

    def overlap(self, lo, hi):
        """Length of ``(a, b] cap (lo, hi]``."""
        d = min(self.b, hi) - max(self.a, lo)
        return d if d > 0 else 0


@dataclass(frozen=True)
class Rect:
    """``(x0, x1] x (y0, y1]``; infinite bounds allowed."""

    x0: object = -INF
    x1: object = INF
    y0: object = 0
    y1: object = INF

    def holds_height(self, y) -> bool:
        return self.y0 < y <= self.y1

    def holds(self, x, y) -> bool:
        return self.x0 < x <= self.x1 and self.holds_height(y)


@dataclass(frozen=True)
class Region:
    """Finite union of rectangles."""

    rects: tuple = ()

    @classmethod
    def half_plane(cls) -> Region:
        return cls((Rect(),))

    @classmethod
    def carleson_box(cls, interval) -> Region:
        lo, hi = _interval(interval)
        return cls((Rect(lo, hi, 0, hi - lo),))

    @classmethod
    def top(cls, i: DyadicInterval) -> Region:
        return cls((Rect(i.left, i.right, i.length / 2, i.length),))

    def __or__(self, other: Region) -> Region:
        return Region(self.rects + other.rects)

    def contains(self, x, y) -> bool:
        return any(r.holds(x, y) for r in self.rects)

    def x_cover(self, y) -> list[tuple]:
        """Merged x-intervals of the region's slice at height ``y``."""
        spans = sorted((r.x0, r.x1) for r in self.rects if r.holds_height(y) and r.x0 < r.x1)
        merged: list[list] = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return [tuple(s) for s in merged]


@dataclass(frozen=True)
class Measure:
    atoms: tuple = ()
    segments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "segments", tuple(self.segments))

    def __add__(self, other: Measure) -> Measure:
        return Measure(self.atoms + other.atoms, self.segments + other.segments)

    def is_empty(self) -> bool:
        return not any(a.mass > 0 for a in self.atoms) and not any(
            s.density > 0 for s in self.segments
        )

    def total_mass(self):
        return sum((a.mass for a in self.atoms), Fraction(0)) + sum(
            (s.mass for s in self.segments), Fraction(0)
        )

    def heights(self) -> list:
        return [a.y for a in self.atoms if a.mass > 0] + [
            s.y for s in self.segments if s.density > 0
        ]

    def x_hull(self):
        xs = [a.x for a in self.atoms if a.mass > 0]
        for s in self.segments:
            if s.density > 0:
                xs += [s.a, s.b]
        return (min(xs), max(xs)) if xs else None

    def is_exact(self) -> bool:
        vals = [v for a in self.atoms for v in (a.x, a.y, a.mass)]
        vals += [v for s in self.segments for v in (s.a, s.b, s.y, s.density)]
        return all(isinstance(v, (int, Fraction)) for v in vals)


@dataclass
class NormReport:
    """A computed norm or constant with provenance.

    ``method`` is ``"exact-rational"``, ``"grid-sup"`` or ``"quadrature"``.
    Grid-sup values are lower bounds of the true supremum.
    """

    value: object
    method: str
    witness: object = None
    params: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return float(self.value)


def _interval(interval):
    if isinstance(interval, DyadicInterval):
        return interval.left, interval.right
    lo, hi = interval
    return lo, hi


def ceil_log2(y) -> int:
    """Smallest ``k`` with ``y <= 2**k``."""
    if isinstance(y, float):
        m, e = math.frexp(y)
        return e - 1 if m == 0.5 else e
    q = Fraction(y)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    while pow2(k) < q:
        k += 1
    while pow2(k - 1) >= q:
        k -= 1
    return k


def _mass_in(m: Measure, lo, hi, ylo, yhi):
    total = Fraction(0)
    for a in m.atoms:
        if lo < a.x <= hi and ylo < a.y <= yhi:
            total += a.mass
    for s in m.segments:
        if ylo < s.y <= yhi:
            total += s.density * s.overlap(lo, hi)
    return total


def top_mass(m: Measure, i: DyadicInterval):
    """Mass of ``T_I = I x (|I|/2, |I|]``."""
    return _mass_in(m, i.left, i.right, i.length / 2, i.length)


def box_mass(m: Measure, interval):
    """Mass of the Carleson square ``Q_I = I x (0, |I|]``."""
    lo, hi = _interval(interval)
    return _mass_in(m, lo, hi, 0, hi - lo)


def restrict(m: Measure, region: Region) -> Measure:
    """``m`` restricted to ``region``; segments are clipped and split as needed."""
    atoms = [a for a in m.atoms if region.contains(a.x, a.y)]
    segments = []
    for s in m.segments:
        for lo, hi in region.x_cover(s.y):
            a, b = max(s.a, lo), min(s.b, hi)
            if a < b:
                segments.append(Segment(a, b, s.y, s.density))
    return Measure(atoms, segments)


def scale_measure(m: Measure, h) -> Measure:
    """Push ``m`` forward under ``(x, y) -> (h x, h y)`` with masses multiplied by ``h``.

    Segment densities are unchanged, so every box mass scales by ``h``; the
    Carleson constant is preserved for dyadic ``h`` and ``S(t) -> S(t / h)``.
    """
    if not h > 0:
        raise ValueError("scale factor must be positive")
    return Measure(
        [Atom(h * a.x, h * a.y, h * a.mass) for a in m.atoms],
        [Segment(h * s.a, h * s.b, h * s.y, s.density) for s in m.segments],
    )


def translate_measure(m: Measure, dx) -> Measure:
    return Measure(
        [Atom(a.x + dx, a.y, a.mass) for a in m.atoms],
        [Segment(s.a + dx, s.b + dx, s.y, s.density) for s in m.segments],
    )


def _event_positions(m: Measure, k: int) -> list[int]:
    """Positions at scale ``k`` whose box mass can differ from their neighbours'.

    Inside a run of intervals free of atoms and segment endpoints every
    interval sees the same overlaps, so one representative per run suffices.
    """
    size = pow2(k)
    marks = set()
    for a in m.atoms:
        if a.mass > 0 and a.y <= size:
            marks.add(math.ceil(Fraction(a.x) / size) - 1)
    spans = []
    for s in m.segments:
        if s.density > 0 and s.y <= size:
            first = math.floor(Fraction(s.a) / size)
            last = math.ceil(Fraction(s.b) / size) - 1
            marks.update((first, last))
            spans.append((first, last))
    ordered = sorted(marks)
    extra = []
    for p, q in zip(ordered, ordered[1:]):
        if q - p > 1 and any(f <= p + 1 <= l for f, l in spans):
            extra.append(p + 1)
    return sorted(marks.union(extra))


def candidate_scales(m: Measure):
    """Scales from the lowest height upward (caller decides where to stop)."""
    hs = m.heights()
    if not hs:
        return
    k = min(ceil_log2(y) for y in hs)
    while True:
        yield k
        k += 1


def stable_scale(m: Measure) -> int:
    """Scale from which every box ``Q_I`` meeting the support holds all of ``m`` on ``I``."""
    from .dyadic import covering_scale

    hull = m.x_hull()
    return max(max(ceil_log2(y) for y in m.heights()), covering_scale(*hull))


def carleson_scan(m: Measure, stop_scale: int | None = None):
    """Yield ``(I, box_mass(I))`` over a candidate family of dyadic intervals.

    The family contains a maximizer of ``box_mass / |I|`` at every scale.  By
    default scanning stops once ``total_mass / |I|`` cannot beat the running
    maximum; with ``stop_scale`` it runs through that scale instead.
    """
    total = m.total_mass()
    if total == 0:
        return
    best = Fraction(-1)
    for k in candidate_scales(m):
        size = pow2(k)
        # atoms binned once per scale: x lies in cell j iff j < x / size <= j + 1
        cells: dict[int, object] = {}
        for a in m.atoms:
            if a.y <= size and a.mass > 0:
                j = math.ceil(Fraction(a.x) / size) - 1
                cells[j] = cells.get(j, 0) + a.mass
        segs = [(s.a, s.b, s.density) for s in m.segments if s.y <= size and s.density > 0]
        for j in _event_positions(m, k):
            i = DyadicInterval(k, j)
            lo, hi = j * size, (j + 1) * size
            mass = Fraction(0) + cells.get(j, 0)
            for a, b, rho in segs:
                if a < hi and b > lo:
                    mass += rho * (min(b, hi) - max(a, lo))
            yield i, mass
            if mass / size > best:
                best = mass / size
        if stop_scale is not None:
            if k >= stop_scale:
                return
        elif total / size <= best:
            return


def carleson_constant(m: Measure) -> NormReport:
    """``Carl(m) = sup_I m(Q_I) / |I|`` over dyadic ``I``, with the smallest witness."""
    best, witness = Fraction(0), None
    scales = set()
    for i, mass in carleson_scan(m):
        scales.add(i.scale)
        r = mass / i.length
        if r > best or (r == best and witness is not None and (i.scale, i.pos) < (witness.scale, witness.pos)):
            best, witness = r, i
    method = "exact-rational" if m.is_exact() else "grid-sup"
    params = {"scales": [min(scales), max(scales)]} if scales else {}
    return NormReport(best, method, witness, params)
