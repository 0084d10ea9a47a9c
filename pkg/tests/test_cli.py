from __future__ import annotations

import io
import json
from importlib import resources

import jsonschema
import pytest

from artincohom.cli import run
from artincohom.laurent import parse

SCHEMA = json.loads(resources.files("artincohom").joinpath("schema/report.schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--format", "json", *argv)
    rep = json.loads(out) if out else None
    if rep is not None:
        jsonschema.validate(rep, SCHEMA)
    return code, rep, err


def test_poincare_b2():
    code, out, _ = call("poincare", "--family", "B", "--rank", "2", "--weights", "qt")
    assert code == 0
    assert parse(out.strip()) == parse("1 + t + q + 2*q*t + q*t^2 + q^2*t + q^2*t^2")
    code, rep, _ = call_json("poincare", "--family", "tildeB", "--rank", "3", "--subset", "(0/1)11")
    assert code == 0 and rep["subset"] == [1, 3, 4]


def test_poincare_rejects_infinite_subset():
    code, _, err = call("poincare", "--family", "tildeB", "--rank", "3")
    assert code == 2 and "infinite" in err


def test_verify_main3():
    code, rep, _ = call_json("verify", "--theorem", "main3", "--rank", "3")
    assert code == 0 and rep["pass"] and rep["dims"] == [1, 2, 3, 3]


def test_verify_failure_exit_code():
    code, rep, _ = call_json("verify", "--theorem", "main2", "--rank", "3")
    assert code == 1 and not rep["pass"]
    code, rep, _ = call_json("verify", "--theorem", "main2", "--rank", "3", "--reading", "reconciled")
    assert code == 0


def test_missing_coefficients_is_usage_error():
    code, out, err = call("cohomology", "--family", "tildeB", "--rank", "3")
    assert code == 2 and not out and "--coeff" in err


@pytest.mark.parametrize("argv", [
    ("cohomology", "--family", "tildeB", "--rank", "3", "--coeff", "bogus"),
    ("cohomology", "--family", "tildeB", "--rank", "3", "--coeff", "cyclotomic:i=1"),
    ("cohomology", "--family", "B", "--rank", "3", "--coeff", "trivial", "--augmented"),
    ("complex", "--family", "A", "--rank", "3", "--weights", "qt"),
    ("verify", "--theorem", "main3", "--rank", "9"),
    ("verify", "--theorem", "nope", "--rank", "3"),
    ("frobnicate",),
])
def test_usage_errors(argv):
    code, out, _ = call(*argv)
    assert code == 2 and not out


def test_max_rank_override():
    code, _, _ = call("--max-rank", "2", "complex", "--family", "B", "--rank", "3")
    assert code == 2
    code, _, _ = call("--max-rank", "3", "complex", "--family", "B", "--rank", "3")
    assert code == 0


@pytest.mark.parametrize("coeff,key", [
    ("trivial", "dim"), ("generic", "dim"), ("cyclotomic:d=4,i=1", "dim"),
    ("rational:q=2,t=-1/2", "dim"), ("slice:t=-q^-2", "free_rank"), ("slice:t=3/2", "free_rank"),
])
def test_cohomology_reports(coeff, key):
    code, rep, _ = call_json("cohomology", "--family", "tildeB", "--rank", "4", "--coeff", coeff)
    assert code == 0
    assert all(key in g for g in rep["degrees"])


def test_cohomology_values():
    _, rep, _ = call_json("cohomology", "--family", "tildeB", "--rank", "3", "--coeff", "trivial")
    assert [g["dim"] for g in rep["degrees"]] == [1, 2, 3, 3]
    _, rep, _ = call_json("cohomology", "--family", "D", "--rank", "4", "--sub", "G1", "--coeff", "slice:none")
    assert rep["degrees"][3]["torsion"] == ["1*q^0*t^0 + 1*q^2*t^0"]


def test_complex_dump(tmp_path):
    path = tmp_path / "m.txt"
    code, rep, _ = call_json("complex", "--family", "tildeB", "--rank", "3", "--augmented", "--dump", str(path))
    assert code == 0 and rep["dims"] == [1, 4, 6, 4, 1]
    text = path.read_text()
    assert text.startswith("# complex Chat(tildeB_3)")
    assert "degree 3: rows=1 cols=4" in text


def test_arrangement_command():
    code, rep, _ = call_json("arrangement", "--rank", "2", "--variant", "orbit")
    assert code == 0 and rep["chamber_count"] == 48
    code, out, _ = call("arrangement", "--rank", "1")
    assert code == 0 and "6 chambers" in out


def test_verify_lemma_json():
    code, rep, _ = call_json("verify", "--theorem", "lemma-simplicial", "--rank", "2")
    assert code == 0 and rep["arrangement"]["chamber_count"] == 32


@pytest.mark.parametrize("argv", [
    ("verify", "--theorem", "inv", "--rank", "3"),
    ("cohomology", "--family", "tildeB", "--rank", "4", "--coeff", "cyclotomic:d=6,i=2"),
    ("verify", "--theorem", "dpssG", "--rank", "5"),
])
@pytest.mark.parametrize("fmt", ["json", "text"])
def test_deterministic_output(argv, fmt):
    a = call("--format", fmt, *argv)
    b = call("--format", fmt, *argv)
    assert a == b


def test_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call("--format", "json", "--output", str(path), "verify", "--theorem", "main3", "--rank", "3")
    assert code == 0 and not out
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


def test_no_floats_in_reports():
    _, out, _ = call("--format", "json", "verify", "--theorem", "inv", "--rank", "3")

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(x)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))
