import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from carleson import Atom, Measure, carleson_constant
from carleson.constructions import dyadic_counterexample, poisson_staircase
from carleson.io import (
    FormatError,
    dumps,
    format_number,
    load,
    matrix_csv,
    measure_from_dict,
    parse_number,
    save,
    step_from_dict,
    to_jsonable,
)

from conftest import measures, step_functions


def test_parse_number():
    assert parse_number("3/2^4") == F(3, 16)
    assert parse_number("-5/12") == F(-5, 12)
    assert parse_number(7) == 7 and isinstance(parse_number(7), F)
    assert parse_number("0.5") == 0.5 and isinstance(parse_number("0.5"), float)
    for bad in (True, None, "abc", "1/0"):
        with pytest.raises(FormatError):
            parse_number(bad)


def test_format_number():
    assert format_number(F(3, 16)) == "3/16"
    assert format_number(2) == "2"


@given(measures())
def test_measure_round_trip(mu):
    assert measure_from_dict(json.loads(dumps(mu))) == mu


@given(step_functions())
def test_step_round_trip(f):
    assert step_from_dict(json.loads(dumps(f))) == f


def test_file_round_trip(tmp_path):
    for obj in (poisson_staircase(3, F(1, 4)), dyadic_counterexample(3)):
        save(obj, tmp_path / "x.json")
        assert load(tmp_path / "x.json") == obj


def test_malformed_inputs(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(FormatError):
        load(p)
    p.write_text("[1, 2]")
    with pytest.raises(FormatError):
        load(p)
    p.write_text('{"foo": 1}')
    with pytest.raises(FormatError):
        load(p)
    with pytest.raises(FormatError):
        measure_from_dict({"atoms": [{"x": "0", "y": "0", "mass": "1"}]})
    with pytest.raises(FormatError):
        step_from_dict({"breakpoints": ["0", "1"], "values": []})


def test_jsonable_report():
    d = to_jsonable(carleson_constant(Measure([Atom(F(1, 2), F(1, 2), 1)])))
    assert d["value"] == "2" and d["witness"] == {"scale": -1, "pos": 0}
    assert to_jsonable({"n": 3, "x": float("inf")}) == {"n": 3, "x": "inf"}


def test_matrix_csv():
    text = matrix_csv([[1.0, 0.0], [0.5, 2.0]], ["0:0", "-1:0"])
    assert text.splitlines()[0] == ",0:0,-1:0"
    assert text.splitlines()[2] == "-1:0,0.5,2"
