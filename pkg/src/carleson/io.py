"""JSON and CSV serialization with exact rational strings.

Rationals are written as ``"a/b"`` (or ``"a"``).  On input ``"p/2^q"``,
``"a/b"`` and integers are read exactly; decimal strings and JSON floats are
read as floats, which puts the object in floating mode.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from fractions import Fraction

from .dyadic import DyadicInterval, StepFunction
from .measure import Atom, Measure, NormReport, Segment

__all__ = [
    "FormatError",
    "parse_number",
    "format_number",
    "measure_to_dict",
    "measure_from_dict",
    "step_to_dict",
    "step_from_dict",
    "report_to_dict",
    "to_jsonable",
    "dumps",
    "load",
    "save",
    "write_csv",
    "format_float",
    "matrix_csv",
]


class FormatError(ValueError):
    """Malformed serialized input."""


_DYADIC = re.compile(r"^\s*([+-]?\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")
_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+)?\s*$")


def parse_number(v):
    if isinstance(v, bool):
        raise FormatError(f"not a number: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if not isinstance(v, str):
        raise FormatError(f"not a number: {v!r}")
    m = _DYADIC.match(v)
    if m:
        return Fraction(int(m.group(1)), 2 ** int(m.group(2)))
    try:
        if _RATIONAL.match(v):
            return Fraction(v.replace(" ", ""))
        return float(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a number: {v!r}") from exc


def format_number(v):
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    return repr(float(v))


def format_float(v) -> str:
    return f"{float(v):.17g}"


# ---------------------------------------------------------------- objects


def measure_to_dict(m: Measure) -> dict:
    f = format_number
    return {
        "atoms": [{"x": f(a.x), "y": f(a.y), "mass": f(a.mass)} for a in m.atoms],
        "segments": [
            {"a": f(s.a), "b": f(s.b), "y": f(s.y), "density": f(s.density)} for s in m.segments
        ],
    }


def measure_from_dict(d) -> Measure:
    try:
        p = parse_number
        atoms = [Atom(p(a["x"]), p(a["y"]), p(a["mass"])) for a in d.get("atoms", [])]
        segs = [
            Segment(p(s["a"]), p(s["b"]), p(s["y"]), p(s.get("density", "1")))
            for s in d.get("segments", [])
        ]
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed measure: {exc}") from exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return Measure(atoms, segs)


def step_to_dict(f: StepFunction) -> dict:
    return {
        "breakpoints": [format_number(x) for x in f.breakpoints],
        "values": [format_number(v) for v in f.values],
    }


def step_from_dict(d) -> StepFunction:
    try:
        bps = [parse_number(x) for x in d["breakpoints"]]
        vals = [parse_number(v) for v in d["values"]]
        return StepFunction(bps, vals)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed step function: {exc}") from exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _witness(w):
    if w is None:
        return None
    if isinstance(w, DyadicInterval):
        return {"scale": w.scale, "pos": w.pos}
    a, b = w
    return {"a": format_number(a), "b": format_number(b)}


def report_to_dict(r: NormReport) -> dict:
    return {
        "value": to_jsonable(r.value),
        "method": r.method,
        "witness": _witness(r.witness),
        "params": to_jsonable(r.params),
    }


def to_jsonable(obj):
    """Recursively convert library objects into JSON-ready values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_number(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, DyadicInterval):
        return _witness(obj)
    if isinstance(obj, Measure):
        return measure_to_dict(obj)
    if isinstance(obj, StepFunction):
        return step_to_dict(obj)
    if isinstance(obj, NormReport):
        return report_to_dict(obj)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return to_jsonable(obj.item())
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def load(path):
    """Read a Measure or StepFunction from a JSON file (dispatch on keys)."""
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(d, dict):
        raise FormatError(f"{path}: expected an object")
    if "breakpoints" in d:
        return step_from_dict(d)
    if "atoms" in d or "segments" in d:
        return measure_from_dict(d)
    raise FormatError(f"{path}: neither a measure nor a step function")


def save(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


# ---------------------------------------------------------------- CSV


def _cell(v):
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (int, Fraction)):
        return format_number(v)
    return str(v)


def write_csv(path_or_file, header, rows) -> None:
    """Write rows with a fixed column order; floats get 17 significant digits."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="", encoding="utf-8") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    finally:
        if own:
            fh.close()


def matrix_csv(matrix, labels) -> str:
    """Dense CSV of a square matrix with ``k:j`` interval labels on the header row."""
    import numpy as np

    if hasattr(matrix, "toarray"):
        matrix = matrix.toarray()
    a = np.asarray(matrix, dtype=float)
    buf = io.StringIO()
    write_csv(buf, ["", *labels], ([lab, *map(float, row)] for lab, row in zip(labels, a)))
    return buf.getvalue()
