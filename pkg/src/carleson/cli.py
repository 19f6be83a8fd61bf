"""Command-line front end.

    carleson gen staircase --m 4 --h 1 -o mu.json
    carleson carleson mu.json
    carleson balayage mu.json --kind poisson --eval 0,1/2,3
    carleson norm bmo --input mu.json --scales 10 10
    carleson paraproduct b.json --window 0:0 --depth 4
    carleson verify paraid --depth 5 --samples 100 --seed 7
    carleson sweep staircase --from 1 --to 10

Exit status: 0 on success, 1 when a verification fails, 2 for bad flags,
3 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import io as cio
from .balayage import PoissonBalayage, dyadic_balayage, poisson_l1, poisson_l2_sq
from .characterization import restricted_sup_dyadic, sandwich
from .constructions import (
    balayage_measure_from_function,
    counterexample_measure,
    dyadic_counterexample,
    dyadic_log,
    epsilon_schedule_dyadic,
    epsilon_schedule_staircase,
    normalized_staircase,
    poisson_staircase,
)
from .dyadic import DyadicInterval, StepFunction, dilate, square_function
from .measure import Measure, carleson_constant
from .norms import bmo_estimate, bmod_norm_sq, l1_norm, l2_norm_sq
from .paraproduct import (
    HaarBasisSlice,
    operator_norm_ratios,
    paraproduct_matrices,
    verify_paraproduct_identity,
)
from .verify import CHECKS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _number(text):
    try:
        return cio.parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _interval_label(text) -> DyadicInterval:
    try:
        k, j = text.split(":")
        return DyadicInterval(int(k), int(j))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected k:j, got {text!r}") from exc


def _points(text):
    return [_number(t) for t in text.split(",") if t.strip()]


def _load(path, kind=None):
    try:
        obj = cio.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except cio.FormatError as exc:
        raise InputError(str(exc)) from exc
    if kind is not None and not isinstance(obj, kind):
        raise InputError(f"{path}: expected a {kind.__name__}")
    return obj


def _fmt_interval(i) -> str:
    if i is None:
        return "-"
    if isinstance(i, DyadicInterval):
        return f"({i.left}, {i.right}]"
    a, b = i
    return f"({a}, {b}]"


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else f"{v} ({float(v):.17g})"
    return cio.format_float(v) if isinstance(v, float) else str(v)


class Reporter:
    """Human-readable lines on stdout, or one JSON document with ``--json``."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.payload: dict = {}

    def line(self, text: str) -> None:
        if not self.as_json:
            print(text)

    def data(self, **kw) -> None:
        self.payload.update(kw)

    def finish(self) -> None:
        if self.as_json:
            sys.stdout.write(cio.dumps(self.payload))


def _emit(obj, path, rep: Reporter) -> None:
    if path:
        cio.save(obj, path)
        rep.line(f"wrote {path}")
    elif rep.as_json:
        rep.data(object=obj)
    else:
        sys.stdout.write(cio.dumps(obj))


# ---------------------------------------------------------------- commands


def cmd_gen(args, rep: Reporter) -> int:
    kind = args.kind
    if kind == "staircase":
        if args.eps is not None:
            m, K = epsilon_schedule_staircase(args.eps)
            obj = normalized_staircase(m, K)
            rep.line(f"eps={args.eps}: m={m}, h=4^-{K}, masses divided by {m + 1}")
            rep.data(m=m, K=K)
        else:
            obj = poisson_staircase(args.m, args.h)
    elif kind == "counterexample":
        if args.eps is not None:
            N, K = epsilon_schedule_dyadic(args.eps)
            obj = counterexample_measure(N, K)
            rep.line(f"eps={args.eps}: N={N}, K={K}")
            rep.data(N=N, K=K)
        elif args.measure:
            obj = counterexample_measure(args.N, args.K)
        else:
            obj = dilate(dyadic_counterexample(args.N), args.K)
    elif kind == "dyadiclog":
        obj = dyadic_log(args.N)
    else:  # measure-from-fn
        if not args.input:
            raise InputError("measure-from-fn needs --input")
        obj = balayage_measure_from_function(_load(args.input, StepFunction))
    _emit(obj, args.output, rep)
    return EXIT_OK


def cmd_carleson(args, rep: Reporter) -> int:
    m = _load(args.file, Measure)
    if m.is_empty():
        raise InputError("measure is empty")
    r = carleson_constant(m)
    rep.line(f"Carl = {_fmt_value(r.value)}  witness {_fmt_interval(r.witness)}  [{r.method}]")
    rep.data(carleson=r)
    if args.sandwich:
        s = sandwich(m)
        rep.line(
            f"sup_I ||S^d restricted to Q_I||_BMOd = {s.sup_restricted:.17g} at {_fmt_interval(s.witness)}"
        )
        rep.line(f"lower_ratio = {s.lower_ratio:.6g}  upper_ratio = {s.upper_ratio:.6g}")
        rep.line(f"continuous sup (grid) = {s.continuous_sup:.6g}; D/Carl = {s.balay_lower['ratio']:.6g}")
        for k, v in s.verdicts.items():
            rep.line(f"{'PASS' if v else 'FAIL'} {k}")
        rep.data(sandwich=s)
        return EXIT_OK if s.passed else EXIT_FAIL
    return EXIT_OK


def cmd_balayage(args, rep: Reporter) -> int:
    m = _load(args.file, Measure)
    if args.kind == "dyadic":
        f = dyadic_balayage(m)
        evaluate = lambda ts: [f(Fraction(t)) for t in ts]
    else:
        pb = PoissonBalayage.of(m)
        evaluate = lambda ts: [float(v) for v in pb([float(t) for t in ts])]
    if args.output:
        if args.kind != "dyadic":
            raise InputError("--output saves the dyadic balayage only")
        cio.save(f, args.output)
        rep.line(f"wrote {args.output}")
    if args.eval:
        ts = args.eval
        vals = evaluate(ts)
        for t, v in zip(ts, vals):
            rep.line(f"{_fmt_value(t)},{_fmt_value(v)}")
        rep.data(t=list(ts), value=vals)
    if args.csv:
        if not args.range or args.step is None:
            raise InputError("--csv needs --range a b and --step s")
        a, b = args.range
        s = args.step
        if not s > 0 or not b >= a:
            raise InputError("need a <= b and step > 0")
        n = int(math.floor((b - a) / s + 1e-9)) + 1
        ts = [a + k * s for k in range(n)]
        vals = evaluate(ts)
        cio.write_csv(args.csv, ["t", "value"], ([float(t), float(v)] for t, v in zip(ts, vals)))
        rep.line(f"wrote {args.csv} ({n} rows)")
    if not (args.eval or args.csv or args.output):
        raise InputError("nothing to do: give --eval, --csv or --output")
    return EXIT_OK


def cmd_norm(args, rep: Reporter) -> int:
    obj = _load(args.input)
    if args.which == "bmo":
        kw = {}
        if args.scales:
            kw["scales"] = tuple(args.scales)
        if args.window:
            kw["window"] = tuple(args.window)
        r = bmo_estimate(obj, **kw)
        rep.line(f"BMO >= {_fmt_value(r.value)}  witness {_fmt_interval(r.witness)}  [{r.method}]")
        rep.data(norm=r)
    elif args.which == "bmod":
        f = obj if isinstance(obj, StepFunction) else dyadic_balayage(obj)
        r = bmod_norm_sq(f)
        rep.line(f"||.||^2_BMOd = {_fmt_value(r.value)}  witness {_fmt_interval(r.witness)}  [{r.method}]")
        rep.data(norm=r)
    elif args.which == "l1":
        v = l1_norm(obj)
        rep.line(f"L1 = {_fmt_value(v)}")
        rep.data(value=v)
    else:
        v = l2_norm_sq(obj)
        rep.line(f"L2^2 = {_fmt_value(v)}")
        rep.data(value=v)
    return EXIT_OK


def cmd_paraproduct(args, rep: Reporter) -> int:
    b = _load(args.file, StepFunction)
    slc = HaarBasisSlice(args.window, args.depth)
    try:
        ident = verify_paraproduct_identity(b, slc, args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    norms = operator_norm_ratios(b, slc)
    rep.line(
        f"slice {_fmt_interval(args.window)} depth {args.depth}: {len(slc)} Haar vectors"
    )
    rep.line(
        f"{'PASS' if ident['passed'] else 'FAIL'} Gram identity: float residual {ident['float_residual']:.3e}, "
        f"exact residual {ident['exact_residual']}, lower-triangular {ident['structure_ok']}"
    )
    for key in ("pi_b", "pi_Sb", "pi_Sb_sym", "gram", "gram_minus_diag"):
        rep.line(f"||{key}|| = {norms[key]:.12g}")
    rep.line(f"||b||_BMOd = {norms['bmod_b']:.12g}, ||S[b]||_BMOd = {norms['bmod_Sb']:.12g}")
    rep.data(identity=ident, norms=norms)
    if args.csv:
        M, P, D = paraproduct_matrices(b, slc)
        choice = {"pi": M, "pi_Sb": P, "diag": D, "gram": (M.T @ M)}[args.matrix]
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(cio.matrix_csv(choice, [i.label() for i in slc.basis]))
        rep.line(f"wrote {args.csv}")
    return EXIT_OK if ident["passed"] else EXIT_FAIL


_VERIFY_FLAGS = {
    "bala": ("samples", "seed"),
    "dbala": ("samples", "seed"),
    "dcounter": ("N_max",),
    "paraid": ("depth", "samples", "seed", "tol"),
    "diagpart": ("depth", "samples", "seed"),
    "rademacher": ("N", "depth"),
    "pcounter": ("m_max",),
    "dbalay": ("samples", "seed"),
    "balay": ("samples", "seed"),
    "lemma41": ("j_max", "samples", "seed"),
}


def cmd_verify(args, rep: Reporter) -> int:
    names = list(CHECKS) if args.name == "all" else [args.name]
    results = []
    for name in names:
        kw = {}
        for flag in _VERIFY_FLAGS[name]:
            val = getattr(args, flag, None)
            if val is not None:
                kw[flag] = val
        r = CHECKS[name](**kw)
        results.append(r)
        rep.line(f"{'PASS' if r['passed'] else 'FAIL'} {name}: {r['summary']}")
    rep.data(results=results, passed=all(r["passed"] for r in results))
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_FAIL


SWEEP_COLUMNS = ["param", "carl", "bmo_estimate", "bmod", "l1", "l2", "restricted_sup"]


def _sweep_staircase(m, h):
    mu = poisson_staircase(m, h)
    sd = dyadic_balayage(mu)
    return [
        m,
        carleson_constant(mu).value,
        float(bmo_estimate(mu).value),
        bmod_norm_sq(sd).value,
        poisson_l1(mu),
        math.sqrt(poisson_l2_sq(mu)),
        restricted_sup_dyadic(mu)["value"],
    ]


def _sweep_counterexample(N, restricted_cap=6):
    b = dyadic_counterexample(N)
    s = square_function(b)
    mu = balayage_measure_from_function(b)
    restricted = restricted_sup_dyadic(mu)["value"] if N <= restricted_cap else ""
    return [
        N,
        carleson_constant(mu).value,
        float(bmo_estimate(s).value),
        bmod_norm_sq(b).value,
        s.norm_l1(),
        math.sqrt(s.norm_l2_sq()),
        restricted,
    ]


def cmd_sweep(args, rep: Reporter) -> int:
    lo, hi = args.from_, args.to
    if hi < lo:
        raise InputError("empty range")
    if args.family == "staircase":
        h = args.h if args.h is not None else Fraction(1)
        rows = [_sweep_staircase(m, h) for m in range(lo, hi + 1)]
    else:
        rows = [_sweep_counterexample(N) for N in range(lo, hi + 1)]
    if args.output:
        cio.write_csv(args.output, SWEEP_COLUMNS, rows)
        rep.line(f"wrote {args.output}")
    elif not rep.as_json:
        import io

        buf = io.StringIO()
        cio.write_csv(buf, SWEEP_COLUMNS, rows)
        sys.stdout.write(buf.getvalue())
    rep.data(columns=SWEEP_COLUMNS, rows=rows)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="floating tolerance (default 1e-9)")

    p = argparse.ArgumentParser(prog="carleson", description=__doc__.split("\n\n")[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate measures and step functions")
    g.add_argument("kind", choices=["staircase", "counterexample", "dyadiclog", "measure-from-fn"])
    g.add_argument("--m", type=int, default=4)
    g.add_argument("--h", type=_number, default=Fraction(1))
    g.add_argument("--N", type=int, default=4)
    g.add_argument("--K", type=int, default=0, help="dilation exponent: t -> 2^K t")
    g.add_argument("--eps", type=float, help="pick parameters from the epsilon recipe")
    g.add_argument("--measure", action="store_true", help="counterexample: emit mu_f for f = b_N/sqrt(N)")
    g.add_argument("--input", help="step function JSON for measure-from-fn")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("carleson", parents=[common], help="Carleson constant of a measure")
    c.add_argument("file")
    c.add_argument("--sandwich", action="store_true", help="also report the restricted-balayage characterization")
    c.set_defaults(func=cmd_carleson)

    b = sub.add_parser("balayage", parents=[common], help="evaluate a balayage")
    b.add_argument("file")
    b.add_argument("--kind", choices=["dyadic", "poisson"], default="poisson")
    b.add_argument("--eval", type=_points)
    b.add_argument("--csv")
    b.add_argument("--range", type=_number, nargs=2, metavar=("A", "B"))
    b.add_argument("--step", type=_number)
    b.add_argument("-o", "--output", help="save the dyadic balayage as step-function JSON")
    b.set_defaults(func=cmd_balayage)

    n = sub.add_parser("norm", parents=[common], help="norms of a step function or balayage")
    n.add_argument("which", choices=["bmo", "bmod", "l1", "l2"])
    n.add_argument("--input", required=True)
    n.add_argument("--scales", type=int, nargs=2, metavar=("L", "M"))
    n.add_argument("--window", type=_number, nargs=2, metavar=("A", "B"))
    n.set_defaults(func=cmd_norm)

    pp = sub.add_parser("paraproduct", parents=[common], help="paraproduct matrices on a Haar slice")
    pp.add_argument("file")
    pp.add_argument("--window", type=_interval_label, default=DyadicInterval(1, 0), help="k:j")
    pp.add_argument("--depth", type=int, default=4)
    pp.add_argument("--csv")
    pp.add_argument("--matrix", choices=["pi", "pi_Sb", "diag", "gram"], default="pi")
    pp.set_defaults(func=cmd_paraproduct)

    v = sub.add_parser("verify", parents=[common], help="run a numerical check")
    v.add_argument("name", choices=[*CHECKS, "all"])
    v.add_argument("--samples", type=int)
    v.add_argument("--depth", type=int)
    v.add_argument("--N", type=int)
    v.add_argument("--N-max", dest="N_max", type=int)
    v.add_argument("--m-max", dest="m_max", type=int)
    v.add_argument("--j-max", dest="j_max", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="CSV table over a parameter range")
    s.add_argument("family", choices=["staircase", "dyadic-counterexample"])
    s.add_argument("--from", dest="from_", type=int, required=True)
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--h", type=_number)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("seed", 0), ("tol", 1e-9)):
        if not hasattr(args, name):
            setattr(args, name, default)
    rep = Reporter(args.json)
    try:
        code = args.func(args, rep)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())
