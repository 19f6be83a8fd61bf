"""Generators for the named objects: Rademacher functions, the dyadic
counterexample symbol and its dyadic log, measures realizing a square function,
the Poisson staircase, and seeded random corpora for regression checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .dyadic import StepFunction, as_dyadic, haar_coefficients, pow2
from .measure import Atom, Measure, Segment

__all__ = [
    "counterexample_interval",
    "rademacher",
    "dyadic_counterexample",
    "dyadic_log",
    "balayage_measure_from_function",
    "poisson_staircase",
    "random_step_function",
    "random_measure",
    "scale_masses",
    "counterexample_measure",
    "epsilon_schedule_dyadic",
    "epsilon_schedule_staircase",
    "normalized_staircase",
]


def counterexample_interval(k: int) -> tuple[Fraction, Fraction]:
    """``I_k`` of the staggered partition of the line.

    ``I_0 = (0, 1]``, ``I_-1 = (-2, 0]``, ``I_k = (2^k - 1, 2^(k+1) - 1]`` for
    ``k >= 1`` and ``I_k = (-2^-k, -2^(-k-1)]`` for ``k <= -2``.
    """
    if k == 0:
        return Fraction(0), Fraction(1)
    if k == -1:
        return Fraction(-2), Fraction(0)
    if k > 0:
        return Fraction(2**k - 1), Fraction(2 ** (k + 1) - 1)
    return -pow2(-k), -pow2(-k - 1)


def rademacher(n: int, window) -> StepFunction:
    """``r_n = r_1(2**(n-1) t)`` restricted to ``window``.

    ``r_1`` is ``-1`` on ``(j, j + 1/2]`` and ``+1`` on ``(j + 1/2, j + 1]``,
    so ``r_n`` alternates ``-1, +1`` on consecutive cells of length ``2**-n``
    starting with ``-1`` on ``(0, 2**-n]``.
    """
    if n < 1:
        raise ValueError("Rademacher index starts at 1")
    lo, hi = (as_dyadic(x) for x in window)
    if not lo < hi:
        raise ValueError("empty window")
    return _rademacher_sum(n, n, lo, hi)


def _rademacher_sum(n_lo: int, n_hi: int, lo: Fraction, hi: Fraction) -> StepFunction:
    """``sum_{n=n_lo}^{n_hi} r_n`` on ``(lo, hi]``, built cell by cell at the finest level."""
    cell = pow2(-n_hi)
    first = (lo / cell).__floor__()
    last = -((-hi / cell).__floor__())
    pieces = []
    for i in range(first, last):
        value = 0
        for n in range(n_lo, n_hi + 1):
            value += 1 if (i >> (n_hi - n)) & 1 else -1
        a, b = max(i * cell, lo), min((i + 1) * cell, hi)
        if a < b:
            pieces.append((a, b, value))
    return StepFunction.from_pieces(pieces)


def dyadic_counterexample(N: int) -> StepFunction:
    """``b_N = sum_k sum_{n=1}^{N - |k|} chi_{I_k} r_n`` (terms vanish for ``|k| >= N``)."""
    if N < 1:
        raise ValueError("N must be positive")
    pieces = []
    for k in range(-(N - 1), N):
        lo, hi = counterexample_interval(k)
        pieces.extend(_rademacher_sum(1, N - abs(k), lo, hi).pieces())
    return StepFunction.from_pieces(pieces)


def dyadic_log(N: int) -> StepFunction:
    """``sum_{k=0}^{N} (N - k) chi_{I_k cup I_-k}``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    pieces = []
    for k in range(0, N + 1):
        for j in {k, -k}:
            lo, hi = counterexample_interval(j)
            pieces.append((lo, hi, N - k))
    return StepFunction.from_pieces(pieces)


def balayage_measure_from_function(f: StepFunction, top: int | None = None) -> Measure:
    """Atoms of mass ``f_I**2`` at the centre ``(mid I, 3|I|/4)`` of each top ``T_I``."""
    coeffs = haar_coefficients(f, top)
    atoms = [
        Atom(i.midpoint, 3 * i.length / 4, i.length * c * c / 4)
        for i, c in sorted(coeffs.items())
    ]
    return Measure(atoms)


def poisson_staircase(m: int, h=1) -> Measure:
    """Unit-density segments ``(-h 2^j, h 2^j] x {h 2^-j}`` for ``j = 0..m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    h = Fraction(h) if not isinstance(h, float) else h
    if not h > 0:
        raise ValueError("h must be positive")
    return Measure(
        (),
        [Segment(-h * pow2(j), h * pow2(j), h * pow2(-j), 1) for j in range(m + 1)],
    )


def random_step_function(rng: random.Random, depth: int = 6, span: int = 1, amplitude: int = 3) -> StepFunction:
    """Integer values on cells of length ``2**-depth`` inside ``(0, span]``."""
    cells = span << depth
    cell = pow2(-depth)
    vals = [rng.randint(-amplitude, amplitude) for _ in range(cells)]
    return StepFunction.from_pieces((i * cell, (i + 1) * cell, v) for i, v in enumerate(vals))


def random_measure(rng: random.Random, max_atoms: int = 4, max_segments: int = 2) -> Measure:
    """Small random measure with dyadic-rational data, never empty."""
    while True:
        atoms = [
            Atom(
                Fraction(rng.randint(-64, 64), 16),
                Fraction(rng.randint(1, 64), 32),
                Fraction(rng.randint(1, 16), 4),
            )
            for _ in range(rng.randint(0, max_atoms))
        ]
        segments = []
        for _ in range(rng.randint(0, max_segments)):
            a = Fraction(rng.randint(-64, 48), 16)
            b = a + Fraction(rng.randint(1, 64), 16)
            segments.append(Segment(a, b, Fraction(rng.randint(1, 64), 32), Fraction(rng.randint(1, 8), 4)))
        m = Measure(atoms, segments)
        if not m.is_empty():
            return m


def scale_masses(m: Measure, c) -> Measure:
    """Multiply every atom mass and segment density by ``c``."""
    return Measure(
        [Atom(a.x, a.y, c * a.mass) for a in m.atoms],
        [Segment(s.a, s.b, s.y, c * s.density) for s in m.segments],
    )


def counterexample_measure(N: int, K: int = 0) -> Measure:
    """``mu_f`` for ``f = b_N / sqrt(N)`` dilated by ``2**K``: Carleson constant 1.

    The masses are ``|f_I|**2 = (b_N)_I**2 / N``, so the measure stays rational.
    """
    from .dyadic import dilate

    return scale_masses(balayage_measure_from_function(dilate(dyadic_counterexample(N), K)), Fraction(1, N))


def epsilon_schedule_dyadic(eps, C=8, max_N: int = 14) -> tuple[int, int]:
    """``(N, K)`` with ``C / N < eps / 2`` and ``||S[b_N / sqrt N]||_2`` after ``2**K`` dilation ``< eps / 2``.

    ``b_N`` has on the order of ``N 2**N`` pieces, so ``N`` above ``max_N`` is refused.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    N = int(2 * C / eps) + 1
    if N > max_N:
        raise ValueError(f"eps={eps} needs N={N} > {max_N}; b_N would be too large")
    # S[b_N] is the dyadic log, which has O(N) pieces
    base_sq = dyadic_log(N).norm_l2_sq() / (N * N)
    K = 0
    while base_sq / pow2(K) >= Fraction(eps) ** 2 / 4:
        K += 1
    return N, K


def epsilon_schedule_staircase(eps, C=10) -> tuple[int, int]:
    """``(m, K)`` with ``C / (m+1) < eps / 2`` and ``L1 = 4**-K (2**(m+2) - 2) / (m+1) < eps / 2``.

    ``h = 4**-K`` keeps the scaled staircase commensurable with both grids.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    m = int(2 * C / eps)
    l1 = Fraction(2 ** (m + 2) - 2, m + 1)
    K = 0
    while l1 / pow2(2 * K) >= Fraction(eps) / 2:
        K += 1
    return m, K


def normalized_staircase(m: int, K: int = 0) -> Measure:
    """``poisson_staircase(m, 4**-K) / (m + 1)``: Carleson constant 1."""
    return scale_masses(poisson_staircase(m, pow2(-2 * K)), Fraction(1, m + 1))
