import json
import subprocess
import sys

import pytest

from carleson.cli import main


def run(*argv, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "carleson", *argv], capture_output=True, text=True, cwd=cwd, timeout=120
    )


def test_gen_then_carleson(tmp_path):
    assert main(["gen", "staircase", "--m", "4", "--h", "1", "-o", str(tmp_path / "mu.json")]) == 0
    r = run("--json", "carleson", str(tmp_path / "mu.json"))
    assert r.returncode == 0
    out = json.loads(r.stdout)["carleson"]
    assert out["value"] == "5"
    assert out["witness"] == {"scale": 0, "pos": -1}


def test_sandwich_flag(tmp_path, capsys):
    main(["gen", "staircase", "--m", "2", "-o", str(tmp_path / "mu.json")])
    assert main(["carleson", str(tmp_path / "mu.json"), "--sandwich"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_paraid():
    r = run("verify", "paraid", "--depth", "5", "--samples", "100", "--seed", "7")
    assert r.returncode == 0 and "PASS" in r.stdout


def test_norm_bmo_of_locally_constant(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"breakpoints": ["-8", "8"], "values": ["3"]}))
    r = run("--json", "norm", "bmo", "--input", str(p), "--window", "-4", "4")
    assert r.returncode == 0
    assert json.loads(r.stdout)["norm"]["value"] in ("0", 0)


def test_sweep_staircase():
    r = run("sweep", "staircase", "--from", "1", "--to", "10")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    head = lines[0].split(",")
    rows = [dict(zip(head, ln.split(","))) for ln in lines[1:]]
    assert [int(row["carl"]) for row in rows] == list(range(2, 12))
    assert all(float(row["bmo_estimate"]) <= 10 for row in rows)


def test_sweep_counterexample(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["sweep", "dyadic-counterexample", "--from", "1", "--to", "10", "-o", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    head = lines[0].split(",")
    rows = [dict(zip(head, ln.split(","))) for ln in lines[1:]]
    assert [row["bmod"] for row in rows] == [str(n) for n in range(1, 11)]
    assert all(float(row["bmo_estimate"]) <= 8 for row in rows)


def test_deterministic_output(tmp_path):
    a = run("--json", "verify", "bala", "--samples", "5")
    b = run("--json", "verify", "bala", "--samples", "5")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_balayage_eval(tmp_path):
    main(["gen", "staircase", "--m", "0", "-o", str(tmp_path / "mu.json")])
    r = run("--json", "balayage", str(tmp_path / "mu.json"), "--eval", "0")
    assert r.returncode == 0


def test_paraproduct_csv(tmp_path):
    main(["gen", "counterexample", "--N", "2", "-o", str(tmp_path / "b.json")])
    assert main(["paraproduct", str(tmp_path / "b.json"), "--depth", "2", "--csv", str(tmp_path / "m.csv")]) == 0
    assert (tmp_path / "m.csv").read_text().startswith(",")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["carleson", "/nonexistent.json"], 3),
        (["verify", "nope"], 2),
        (["sweep", "staircase", "--from", "5", "--to", "2"], 3),
        (["gen", "counterexample", "--eps", "0.1"], 3),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv).returncode == code


def test_bad_json_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run("carleson", str(p)).returncode == 3
