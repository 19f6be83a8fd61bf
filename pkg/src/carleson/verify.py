"""Seeded, self-contained checks of the identities and bounds.

Each ``check_*`` returns a dict with at least ``name``, ``passed`` and
``summary``.  The CLI ``verify`` subcommand and the acceptance suite both run
on top of these.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import numpy as np

from .balayage import (
    PoissonBalayage,
    dyadic_balayage,
    poisson_l1,
    poisson_l1_quadrature,
)
from .characterization import normalize_for_balay, restricted_sup_dyadic, verify_balay_lower
from .constructions import (
    balayage_measure_from_function,
    dyadic_counterexample,
    dyadic_log,
    poisson_staircase,
    random_measure,
    random_step_function,
)
from .dyadic import DyadicInterval, StepFunction, dilate, square_function
from .measure import Measure, Segment, carleson_constant, scale_measure
from .norms import bmo_estimate, bmod_norm_sq, dyadic_oscillation_sup
from .paraproduct import (
    HaarBasisSlice,
    check_rademacher_diagonality,
    verify_diagpart,
    verify_paraproduct_identity,
)

__all__ = [
    "CHECKS",
    "run_check",
    "check_bala",
    "check_dbala",
    "check_dcounter",
    "check_paraid",
    "check_diagpart",
    "check_rademacher",
    "check_pcounter",
    "check_dbalay",
    "check_balay",
    "check_layer_approximation",
    "check_staircase_carleson",
    "check_staircase_l1",
    "check_function_balayage",
    "check_domination",
    "measure_corpus",
]

LAYER_BOUND = 16 / math.pi
DOMINATION_CONSTANT = 4 * math.pi
BALA_BAND = 32


def _result(name, passed, summary, **extra):
    return {"name": name, "passed": bool(passed), "summary": summary, **extra}


def measure_corpus(seed: int = 0, count: int = 100) -> list[Measure]:
    rng = random.Random(seed)
    return [random_measure(rng) for _ in range(count)]


def staircase_family(m_max: int = 8) -> list[Measure]:
    return [poisson_staircase(m) for m in range(0, m_max + 1)]


# ---------------------------------------------------------------- measures


def check_staircase_carleson(m_max: int = 16, budget: float = 1.0) -> dict:
    start = time.perf_counter()
    bad = []
    for m in range(m_max + 1):
        r = carleson_constant(poisson_staircase(m))
        if r.value != m + 1:
            bad.append((m, r.value))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < budget
    return _result(
        "staircase-carleson",
        ok,
        f"Carl = m+1 for m=0..{m_max}: {'yes' if not bad else bad}; {elapsed:.3f}s (budget {budget}s)",
        elapsed=elapsed,
        mismatches=bad,
    )


def check_staircase_l1(m_max: int = 10, rtol: float = 1e-6) -> dict:
    worst, bad = 0.0, []
    for m in range(m_max + 1):
        mu = poisson_staircase(m)
        exact = poisson_l1(mu)
        if exact != 2 ** (m + 2) - 2:
            bad.append(m)
        q = poisson_l1_quadrature(mu)
        worst = max(worst, abs(q - float(exact)) / float(exact))
    ok = not bad and worst <= rtol
    return _result(
        "staircase-l1",
        ok,
        f"L1 = 2^(m+2)-2 exactly for m=0..{m_max}; worst quadrature rel. error {worst:.2e} (tol {rtol:g})",
        worst=worst,
    )


def check_layer_approximation(j_max: int = 12, samples: int = 1000, seed: int = 0) -> dict:
    """``|S_{mu_j} - chi_{I_j}| 2**(2j)`` on ``|t| <= 2**(j-1)`` and ``|t| >= 2**(j+1)``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    per_j = []
    for j in range(j_max + 1):
        mu = Measure((), [Segment(-(2**j), 2**j, Fraction(1, 2**j), 1)])
        pb = PoissonBalayage.of(mu)
        inner = rng.uniform(-(2.0 ** (j - 1)), 2.0 ** (j - 1), samples)
        inner[:2] = (0.0, 2.0 ** (j - 1))
        outer = 2.0 ** (j + 1) * 2.0 ** rng.uniform(0, 10, samples)
        outer *= rng.choice([-1.0, 1.0], samples)
        outer[:2] = (2.0 ** (j + 1), -(2.0 ** (j + 1)))
        e_in = np.abs(pb(inner) - 1.0).max() * 4.0**j
        e_out = np.abs(pb(outer)).max() * 4.0**j
        per_j.append((j, float(e_in), float(e_out)))
        worst = max(worst, e_in, e_out)
    return _result(
        "lemma41",
        worst <= LAYER_BOUND,
        f"max |S_mu_j - chi_I_j| 4^j = {worst:.4f} <= 16/pi = {LAYER_BOUND:.4f}, j=0..{j_max}",
        worst=float(worst),
        per_j=per_j,
    )


def check_pcounter(m_max: int = 10, bound: float = 10.0, h_exponents=(1, 2)) -> dict:
    """Staircase: bounded BMO, Carl = m+1, decreasing ratio, h-scaling invariance."""
    rows = []
    for m in range(1, m_max + 1):
        mu = poisson_staircase(m)
        carl = carleson_constant(mu).value
        bmo = float(bmo_estimate(mu).value)
        rows.append((m, carl, bmo, bmo / float(carl)))
    bounded = all(r[2] <= bound for r in rows)
    carl_ok = all(r[1] == r[0] + 1 for r in rows)
    ratios = [r[3] for r in rows]
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    # first m from which the ratio decreases strictly
    start = len(rows)
    while start > 1 and ratios[start - 2] > ratios[start - 1]:
        start -= 1
    scaling = []
    base = poisson_staircase(4)
    base_carl = carleson_constant(base).value
    base_bmo = float(bmo_estimate(base).value)
    for K in h_exponents:
        h = Fraction(1, 4**K)
        mu = scale_measure(base, h)
        carl = carleson_constant(mu).value
        bmo = float(bmo_estimate(mu, scales=(12 + 2 * K, 12 - 2 * K)).value)
        scaling.append(
            {
                "h": h,
                "carl_same": carl == base_carl,
                "bmo_diff": abs(bmo - base_bmo),
                "l1_scaled": poisson_l1(mu) == h * poisson_l1(base),
            }
        )
    scaling_ok = all(s["carl_same"] and s["bmo_diff"] <= 1e-9 and s["l1_scaled"] for s in scaling)
    ok = bounded and carl_ok and decreasing and scaling_ok
    return _result(
        "pcounter",
        ok,
        f"max BMO {max(r[2] for r in rows):.4f} <= {bound}; Carl=m+1 {carl_ok}; "
        f"bmo/Carl strictly decreasing {decreasing} (from m={rows[start - 1][0]} on); h-scaling {scaling_ok}",
        rows=rows,
        decreasing=decreasing,
        bounded=bounded,
        scaling_ok=scaling_ok,
        scaling=scaling,
    )


def check_domination(pairs: int = 10_000, seed: int = 0, measures: int = 100) -> dict:
    """``S^d_mu(t) <= 4 pi S_mu(t)`` at ``pairs`` sampled ``(mu, t)``."""
    rng = np.random.default_rng(seed)
    corpus = measure_corpus(seed, measures) + staircase_family(6)
    per = -(-pairs // len(corpus))
    worst, count = 0.0, 0
    for mu in corpus:
        sd = dyadic_balayage(mu)
        lo, hi = mu.x_hull()
        ts = rng.uniform(float(lo) - 1, float(hi) + 1, per)
        # also hit the support of S^d directly
        ts[: min(per, 8)] = np.linspace(float(lo), float(hi), min(per, 8))
        s = PoissonBalayage.of(mu)(ts)
        d = np.array([float(sd(Fraction(t))) for t in ts])
        mask = d > 0
        if mask.any():
            worst = max(worst, float((d[mask] / s[mask]).max()))
        count += len(ts)
    return _result(
        "domination",
        worst <= DOMINATION_CONSTANT,
        f"max S^d/S = {worst:.4f} <= 4 pi = {DOMINATION_CONSTANT:.4f} over {count} pairs",
        worst=worst,
        pairs=count,
    )


def check_bala(samples: int = 20, seed: int = 0) -> dict:
    """Regression band for ``||S_mu||_BMO <= C Carl(mu)``."""
    worst = 0.0
    for mu in measure_corpus(seed, samples):
        carl = float(carleson_constant(mu).value)
        est = float(bmo_estimate(mu, scales=(10, 8)).value)
        worst = max(worst, est / carl)
    return _result(
        "bala",
        worst <= BALA_BAND,
        f"max BMO(S_mu)/Carl = {worst:.4f} <= {BALA_BAND} over {samples} measures",
        worst=worst,
    )


# ---------------------------------------------------------------- dyadic


def check_function_balayage(samples: int = 50, seed: int = 0, max_depth: int = 6) -> dict:
    """``S^d_{mu_f} = S[f]`` exactly; ``Carl(mu_f) = ||f||^2_{BMO^d}`` for mean-zero ``f``.

    ``mu_f`` only carries the coefficients up to the top of ``f``'s window, so
    for ``f`` with nonzero integral the ancestor energy is missing and only
    ``Carl(mu_f) <= ||f||^2_{BMO^d}`` holds.
    """
    rng = random.Random(seed)
    bad_id, bad_carl, bad_le = 0, 0, 0
    for _ in range(samples):
        span = rng.choice((1, 2))
        f = random_step_function(rng, depth=rng.randint(1, max_depth), span=span)
        mu = balayage_measure_from_function(f)
        if dyadic_balayage(mu) != square_function(f):
            bad_id += 1
        if not mu.is_empty() and carleson_constant(mu).value > bmod_norm_sq(f).value:
            bad_le += 1
        g = f - StepFunction.indicator(0, span, f.mean_on(0, span))
        mu0 = balayage_measure_from_function(g)
        if not mu0.is_empty() and carleson_constant(mu0).value != bmod_norm_sq(g).value:
            bad_carl += 1
    ok = bad_id == bad_carl == bad_le == 0
    return _result(
        "function-balayage",
        ok,
        f"S^d(mu_f) = S[f] exactly on {samples - bad_id}/{samples}; "
        f"Carl(mu_f) = ||f||^2_BMOd (mean zero) on {samples - bad_carl}/{samples}; "
        f"Carl(mu_f) <= ||f||^2_BMOd on {samples - bad_le}/{samples}",
        identity_failures=bad_id,
        carl_failures=bad_carl,
    )


def check_dbala(samples: int = 50, seed: int = 0) -> dict:
    """Dyadic ``||S[b]||_{BMO^d} <= 2 ||b||^2_{BMO^d}`` in the L1 oscillation form."""
    rng = random.Random(seed)
    worst = Fraction(0)
    for _ in range(samples):
        b = random_step_function(rng, depth=rng.randint(1, 5), span=rng.choice((1, 2)))
        nb = bmod_norm_sq(b).value
        if nb == 0:
            continue
        worst = max(worst, dyadic_oscillation_sup(square_function(b)).value / nb)
    fb = check_function_balayage(samples, seed)
    ok = worst <= 2 and fb["passed"]
    return _result(
        "dbala",
        ok,
        f"max osc_d(S[b]) / ||b||^2_BMOd = {float(worst):.4f} <= 2; {fb['summary']}",
        worst=worst,
    )


def check_dcounter(N_max: int = 10, bmo_N_max: int = 12, bound: float = 8.0, K_values=(1, 2, 3)) -> dict:
    rows = []
    for N in range(1, N_max + 1):
        b = dyadic_counterexample(N)
        r = bmod_norm_sq(b)
        s = square_function(b)
        rows.append({"N": N, "bmod": r.value, "witness": r.witness, "dyadic_log": s == dyadic_log(N)})
    bmod_ok = all(r["bmod"] == r["N"] for r in rows)
    log_ok = all(r["dyadic_log"] for r in rows)
    bmos = []
    for N in range(1, bmo_N_max + 1):
        # S[b_N] is the dyadic log; this identity is checked exactly above for N <= N_max
        bmos.append(float(bmo_estimate(dyadic_log(N)).value))
    bmo_ok = max(bmos) <= bound
    b = dyadic_counterexample(min(N_max, 6))
    N = min(N_max, 6)
    base = square_function(b).map_values(lambda v: v / N).norm_l2_sq()
    dil_ok = all(
        square_function(dilate(b, K)).map_values(lambda v: v / N).norm_l2_sq() == base / 2**K
        for K in K_values
    )
    ok = bmod_ok and log_ok and bmo_ok and dil_ok
    return _result(
        "dcounter",
        ok,
        f"bmod(b_N) = N for N=1..{N_max}: {bmod_ok}; S[b_N] = dyadic log: {log_ok}; "
        f"max BMO(S[b_N]) = {max(bmos):.4f} <= {bound} (N<={bmo_N_max}); L2 dilation 2^-K/2: {dil_ok}",
        rows=rows,
        bmo=bmos,
    )


def _random_b(rng: random.Random, depth: int) -> StepFunction:
    return random_step_function(rng, depth=depth, span=1)


def check_paraid(depth: int = 5, samples: int = 100, seed: int = 0, tol: float = 1e-9) -> dict:
    rng = random.Random(seed)
    slc = HaarBasisSlice(DyadicInterval(0, 0), depth)
    worst_f, worst_e, structure = 0.0, Fraction(0), True
    for _ in range(samples):
        r = verify_paraproduct_identity(_random_b(rng, depth), slc, tol)
        worst_f = max(worst_f, r["float_residual"])
        worst_e = max(worst_e, r["exact_residual"])
        structure &= r["structure_ok"]
    ok = worst_f <= tol and worst_e == 0 and structure
    return _result(
        "paraid",
        ok,
        f"max float residual {worst_f:.2e} <= {tol:g}; exact residual {worst_e}; lower-triangular {structure}",
        float_residual=worst_f,
        exact_residual=worst_e,
    )


def check_diagpart(depth: int = 4, samples: int = 5, seed: int = 0) -> dict:
    rng = random.Random(seed)
    slc = HaarBasisSlice(DyadicInterval(0, 0), depth)
    worst, count = Fraction(0), 0
    for _ in range(samples):
        b = _random_b(rng, depth)
        for i in slc.basis:
            r = verify_diagpart(b, i)
            worst = max(worst, r["residual"])
            count += 1
    return _result(
        "diagpart",
        worst == 0,
        f"exact residual {worst} over {count} basis vectors (depth {depth})",
        residual=worst,
    )


def check_rademacher(N: int = 4, depth: int | None = None) -> dict:
    r = check_rademacher_diagonality(N, DyadicInterval(0, 0), depth)
    return _result(
        "rademacher",
        r["passed"],
        f"interior off-diagonal max {r['interior_offdiag_max']} (exact); boundary {r['boundary_offdiag_max']:.4f}",
        interior=r["interior_offdiag_max"],
        boundary=r["boundary_offdiag_max"],
    )


# ---------------------------------------------------------------- characterizations


def check_dbalay(samples: int = 100, seed: int = 0, staircase_max: int = 8) -> dict:
    corpus = measure_corpus(seed, samples) + staircase_family(staircase_max)
    worst_lower, worst_upper, identity = 0.0, 0.0, True
    failures = []
    for n, mu in enumerate(corpus):
        carl = carleson_constant(mu).value
        d = restricted_sup_dyadic(mu)
        sq = d["value_sq"]
        lower = carl * carl <= 4 * sq
        upper = sq <= 64 * carl * carl
        identity &= d["average_identity"]
        worst_lower = max(worst_lower, float(carl) / d["value"])
        worst_upper = max(worst_upper, d["value"] / float(carl))
        if not (lower and upper and d["average_identity"]):
            failures.append(n)
    return _result(
        "dbalay",
        not failures,
        f"Carl/sup max {worst_lower:.4f} <= 2; sup/Carl max {worst_upper:.4f} <= 8; "
        f"average identity exact {identity}; {len(corpus)} measures",
        failures=failures,
        worst_lower=worst_lower,
        worst_upper=worst_upper,
    )


def check_balay(samples: int = 100, seed: int = 0, staircase_max: int = 8) -> dict:
    corpus = measure_corpus(seed, samples) + staircase_family(staircase_max)
    worst, failures = math.inf, []
    for n, mu in enumerate(corpus):
        mapped, _ = normalize_for_balay(mu)
        r = verify_balay_lower(mapped)
        worst = min(worst, r["ratio"])
        if not r["passed"]:
            failures.append(n)
    return _result(
        "balay",
        not failures,
        f"min D/Carl = {worst:.4f} >= 1/100 over {len(corpus)} normalised measures",
        failures=failures,
        worst=worst,
    )


CHECKS = {
    "bala": check_bala,
    "dbala": check_dbala,
    "dcounter": check_dcounter,
    "paraid": check_paraid,
    "diagpart": check_diagpart,
    "rademacher": check_rademacher,
    "pcounter": check_pcounter,
    "dbalay": check_dbalay,
    "balay": check_balay,
    "lemma41": check_layer_approximation,
}


def run_check(name: str, **kwargs) -> dict:
    if name not in CHECKS:
        raise KeyError(name)
    return CHECKS[name](**kwargs)
