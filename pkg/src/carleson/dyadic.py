"""Exact dyadic-grid machinery.

Dyadic intervals are left-open, right-closed: ``(j 2^k, (j+1) 2^k]``.  Haar
functions use the convention ``h_I = |I|^{-1/2} (chi_{I_left} - chi_{I_right})``
and coefficients are stored as the rational half-difference
``c_I = <b>_{I_left} - <b>_{I_right}`` so that ``b_I = |I|^{1/2} c_I / 2`` and
``b_I**2 = |I| c_I**2 / 4`` stay exact.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational

__all__ = [
    "DyadicInterval",
    "StepFunction",
    "HaarCoefficients",
    "pow2",
    "as_dyadic",
    "two_adic_valuation",
    "covering_scale",
    "relatives",
    "mean_on",
    "haar_coefficients",
    "project",
    "square_function",
    "square_function_tail_bound",
    "dilate",
]


@lru_cache(maxsize=None)
def pow2(k: int) -> Fraction:
    """Exact ``2**k`` for any integer ``k``."""
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


def as_dyadic(x) -> Fraction:
    """Convert ``x`` to a Fraction and check that its denominator is a power of 2."""
    q = Fraction(x)
    d = q.denominator
    if d & (d - 1):
        raise ValueError(f"{x!r} is not a dyadic rational")
    return q


def two_adic_valuation(x: Fraction) -> int:
    """Largest ``v`` with ``x / 2**v`` an integer; ``x`` must be a nonzero dyadic."""
    n, d = x.numerator, x.denominator
    return (n & -n).bit_length() - d.bit_length()


def covering_scale(lo, hi) -> int:
    """Smallest ``k`` with ``(lo, hi]`` inside ``(-2^k, 2^k]``."""
    r = max(abs(Fraction(lo)), abs(Fraction(hi)))
    if r == 0:
        return 0
    k = math.floor(math.log2(r))
    while pow2(k) < r:
        k += 1
    while k > -1075 and pow2(k - 1) >= r:
        k -= 1
    return k


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """The interval ``(pos * 2**scale, (pos + 1) * 2**scale]``."""

    scale: int
    pos: int

    @property
    def length(self) -> Fraction:
        return pow2(self.scale)

    @property
    def left(self) -> Fraction:
        return self.pos * pow2(self.scale)

    @property
    def right(self) -> Fraction:
        return (self.pos + 1) * pow2(self.scale)

    @property
    def midpoint(self) -> Fraction:
        return (2 * self.pos + 1) * pow2(self.scale - 1)

    @property
    def parent(self) -> DyadicInterval:
        return DyadicInterval(self.scale + 1, self.pos >> 1)

    @property
    def left_child(self) -> DyadicInterval:
        return DyadicInterval(self.scale - 1, 2 * self.pos)

    @property
    def right_child(self) -> DyadicInterval:
        return DyadicInterval(self.scale - 1, 2 * self.pos + 1)

    @property
    def sibling(self) -> DyadicInterval:
        return DyadicInterval(self.scale, self.pos ^ 1)

    @classmethod
    def containing(cls, x, scale: int) -> DyadicInterval:
        """The interval of the given scale that contains ``x`` (right endpoint inclusive)."""
        return cls(scale, math.ceil(Fraction(x) / pow2(scale)) - 1)

    def contains(self, other: DyadicInterval) -> bool:
        """True iff ``other`` is a (not necessarily strict) subinterval."""
        if other.scale > self.scale:
            return False
        return other.pos >> (self.scale - other.scale) == self.pos

    def contains_point(self, x) -> bool:
        return self.left < x <= self.right

    def disjoint(self, other: DyadicInterval) -> bool:
        return not (self.contains(other) or other.contains(self))

    def ancestor(self, scale: int) -> DyadicInterval:
        if scale < self.scale:
            raise ValueError("ancestor scale below interval scale")
        return DyadicInterval(scale, self.pos >> (scale - self.scale))

    def sign_on(self, other: DyadicInterval) -> int:
        """Sign of ``h_self`` on a strict subinterval ``other``."""
        half = self.left_child
        return 1 if half.contains(other) else -1

    def label(self) -> str:
        return f"{self.scale}:{self.pos}"

    def __str__(self) -> str:
        return f"({self.left}, {self.right}]"


def relatives(i: DyadicInterval) -> dict[str, DyadicInterval]:
    return {
        "parent": i.parent,
        "sibling": i.sibling,
        "left_child": i.left_child,
        "right_child": i.right_child,
    }


class StepFunction:
    """Finitely supported piecewise-constant function.

    ``values[i]`` is taken on ``(breakpoints[i], breakpoints[i + 1]]``; the
    function is zero outside ``(breakpoints[0], breakpoints[-1]]``.
    Breakpoints are Fractions; values may be Fractions (exact) or floats.
    """

    __slots__ = ("breakpoints", "values", "__dict__")

    def __init__(self, breakpoints=(), values=()):
        bp = tuple(Fraction(x) for x in breakpoints)
        vals = tuple(values)
        if bp and len(vals) != len(bp) - 1:
            raise ValueError("need exactly one value per piece")
        if not bp and vals:
            raise ValueError("values given without breakpoints")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = bp
        self.values = vals

    # construction

    @classmethod
    def zero(cls) -> StepFunction:
        return cls()

    @classmethod
    def indicator(cls, a, b, c=1) -> StepFunction:
        return cls.from_pieces([(a, b, c)])

    @classmethod
    def from_pieces(cls, pieces) -> StepFunction:
        """Canonical sum of ``c * chi_(a, b]`` over ``(a, b, c)`` triples."""
        jumps: dict[Fraction, object] = {}
        for a, b, c in pieces:
            a, b = Fraction(a), Fraction(b)
            if a > b:
                raise ValueError("piece with a > b")
            if a == b or c == 0:
                continue
            jumps[a] = jumps.get(a, 0) + c
            jumps[b] = jumps.get(b, 0) - c
        xs = sorted(jumps)
        vals = []
        acc = 0
        for x in xs[:-1]:
            acc = acc + jumps[x]
            vals.append(acc)
        return cls._canonical(xs, vals)

    @classmethod
    def _canonical(cls, xs, vals) -> StepFunction:
        bp, out = [], []
        for i, v in enumerate(vals):
            if out and v == out[-1]:
                bp[-1] = xs[i + 1]
                continue
            if not bp:
                bp.append(xs[i])
            out.append(v)
            bp.append(xs[i + 1])
        while out and out[0] == 0:
            out.pop(0)
            bp.pop(0)
        while out and out[-1] == 0:
            out.pop()
            bp.pop()
        if not out:
            return cls()
        return cls(bp, out)

    def canonical(self) -> StepFunction:
        return self._canonical(list(self.breakpoints), list(self.values))

    # basic protocol

    def pieces(self):
        bp = self.breakpoints
        for i, v in enumerate(self.values):
            yield bp[i], bp[i + 1], v

    def __call__(self, t):
        bp = self.breakpoints
        if not bp:
            return 0
        i = bisect.bisect_left(bp, t)
        if i == 0 or i == len(bp):
            return 0
        return self.values[i - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.breakpoints == b.breakpoints and a.values == b.values

    def __hash__(self):
        c = self.canonical()
        return hash((c.breakpoints, c.values))

    def __repr__(self) -> str:
        inner = ", ".join(f"({a}, {b}]: {v}" for a, b, v in self.pieces())
        return f"StepFunction({inner})"

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values)

    def support(self) -> tuple[Fraction, Fraction] | None:
        c = self.canonical()
        if not c.breakpoints:
            return None
        return c.breakpoints[0], c.breakpoints[-1]

    # arithmetic

    def __add__(self, other) -> StepFunction:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return StepFunction.from_pieces([*self.pieces(), *other.pieces()])

    def __neg__(self) -> StepFunction:
        return StepFunction(self.breakpoints, [-v for v in self.values])

    def __sub__(self, other) -> StepFunction:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> StepFunction:
        if isinstance(other, StepFunction):
            xs = sorted(set(self.breakpoints) | set(other.breakpoints))
            vals = [self(b) * other(b) for b in xs[1:]]
            return StepFunction._canonical(xs, vals)
        return StepFunction._canonical(list(self.breakpoints), [v * other for v in self.values])

    __rmul__ = __mul__

    def __truediv__(self, c) -> StepFunction:
        if isinstance(c, int):
            c = Fraction(c)
        return self * (1 / c)

    def map_values(self, fn) -> StepFunction:
        return StepFunction._canonical(list(self.breakpoints), [fn(v) for v in self.values])

    # integration

    @cached_property
    def _prefix(self) -> list:
        acc = [0]
        for a, b, v in self.pieces():
            acc.append(acc[-1] + v * (b - a))
        return acc

    def antiderivative(self, x):
        """``int_{-inf}^{x} f``."""
        bp = self.breakpoints
        if not bp or x <= bp[0]:
            return 0
        if x >= bp[-1]:
            return self._prefix[-1]
        i = bisect.bisect_left(bp, x)
        return self._prefix[i - 1] + self.values[i - 1] * (x - bp[i - 1])

    def integral(self, a=None, b=None):
        if a is None and b is None:
            return self._prefix[-1]
        if a is None or b is None:
            raise ValueError("give both endpoints or neither")
        return self.antiderivative(b) - self.antiderivative(a)

    def mean_on(self, a, b):
        a, b = Fraction(a), Fraction(b)
        if b <= a:
            raise ValueError("interval must have positive length")
        return self.integral(a, b) / (b - a)

    def norm_l1(self):
        return sum((abs(v) * (b - a) for a, b, v in self.pieces()), Fraction(0))

    def norm_l2_sq(self):
        return sum((v * v * (b - a) for a, b, v in self.pieces()), Fraction(0))

    # geometry

    def restrict(self, a, b) -> StepFunction:
        """``f * chi_(a, b]``."""
        a, b = Fraction(a), Fraction(b)
        out = []
        for x0, x1, v in self.pieces():
            lo, hi = max(x0, a), min(x1, b)
            if lo < hi:
                out.append((lo, hi, v))
        return StepFunction.from_pieces(out)

    def dilate(self, k: int) -> StepFunction:
        """``t -> f(2**k t)``."""
        s = pow2(-k)
        return StepFunction([x * s for x in self.breakpoints], self.values)

    def interior_breakpoints(self, a, b) -> list[Fraction]:
        bp = self.breakpoints
        i = bisect.bisect_right(bp, a)
        j = bisect.bisect_left(bp, b)
        return list(bp[i:j])


def mean_on(b: StepFunction, interval):
    lo, hi = _endpoints(interval)
    return b.mean_on(lo, hi)


def _endpoints(interval):
    if isinstance(interval, DyadicInterval):
        return interval.left, interval.right
    lo, hi = interval
    return Fraction(lo), Fraction(hi)


@dataclass
class HaarCoefficients:
    """Sparse map ``DyadicInterval -> c_I`` of nonzero half-differences."""

    entries: dict
    top: int

    def __getitem__(self, i: DyadicInterval):
        return self.entries.get(i, 0)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def b_squared(self, i: DyadicInterval):
        """``b_I**2 = |I| c_I**2 / 4``."""
        c = self.entries.get(i, 0)
        return i.length * c * c / 4

    def b_value(self, i: DyadicInterval) -> float:
        """Floating ``b_I = |I|^{1/2} c_I / 2``."""
        return math.sqrt(float(i.length)) * float(self.entries.get(i, 0)) / 2


def _default_top(b: StepFunction) -> int:
    sup = b.support()
    return 0 if sup is None else covering_scale(*sup)


def _check_top(b: StepFunction, top: int) -> None:
    sup = b.support()
    if sup is None:
        return
    reach = pow2(top)
    if sup[0] < -reach or sup[1] > reach:
        raise ValueError(
            f"window top scale {top} does not cover support ({sup[0]}, {sup[1]}]"
        )


def _nodes_by_scale(b: StepFunction, top: int) -> dict[int, set[int]]:
    """Positions of dyadic intervals (scale <= top) holding a breakpoint in their interior."""
    bp = [x for x in b.canonical().breakpoints if x != 0]
    if not bp:
        return {}
    by_val: dict[int, list[Fraction]] = {}
    for x in bp:
        by_val.setdefault(two_adic_valuation(x), []).append(x)
    k0 = min(by_val) + 1
    nodes: dict[int, set[int]] = {}
    current: set[int] = set()
    for k in range(k0, top + 1):
        current = {j >> 1 for j in current}
        for x in by_val.get(k - 1, ()):
            current.add(math.floor(x / pow2(k)))
        if current:
            nodes[k] = current
    return nodes


def _coefficient(b: StepFunction, i: DyadicInterval):
    lo, mid, hi = i.left, i.midpoint, i.right
    f_lo, f_mid, f_hi = b.antiderivative(lo), b.antiderivative(mid), b.antiderivative(hi)
    return ((f_mid - f_lo) - (f_hi - f_mid)) / (i.length / 2)


def haar_coefficients(b: StepFunction, top: int | None = None) -> HaarCoefficients:
    """Exact nonzero coefficients ``c_I`` for every dyadic ``I`` with ``|I| <= 2**top``.

    ``top`` defaults to the smallest scale with the support inside
    ``(-2**top, 2**top]``; a ``top`` that does not cover the support raises.
    """
    if top is None:
        top = _default_top(b)
    _check_top(b, top)
    entries = {}
    for k, positions in _nodes_by_scale(b, top).items():
        for j in sorted(positions):
            i = DyadicInterval(k, j)
            c = _coefficient(b, i)
            if c != 0:
                entries[i] = c
    return HaarCoefficients(entries, top)


def project(b: StepFunction, i: DyadicInterval) -> StepFunction:
    """``P_I b = sum_{J subset I} b_J h_J``, which is ``(b - <b>_I) chi_I`` on ``I``."""
    restricted = b.restrict(i.left, i.right)
    return restricted - StepFunction.indicator(i.left, i.right, restricted.mean_on(i.left, i.right))


def square_function(b: StepFunction, top: int | None = None) -> StepFunction:
    """``S[b] = sum_{|I| <= 2**top} chi_I b_I**2 / |I| = sum chi_I c_I**2 / 4``."""
    coeffs = haar_coefficients(b, top)
    return StepFunction.from_pieces((i.left, i.right, c * c / 4) for i, c in coeffs.items())


def square_function_tail_bound(b: StepFunction, top: int | None = None):
    """Pointwise bound ``||b||_2**2 / 2**top`` on the omitted ancestor terms."""
    if top is None:
        top = _default_top(b)
    return b.norm_l2_sq() / pow2(top)


def dilate(b: StepFunction, k: int) -> StepFunction:
    return b.dilate(k)
