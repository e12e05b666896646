import json
import os
import subprocess
import sys

import pytest

from zetarecur.cli import main


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "zetarecur", *args], capture_output=True, text=True,
                          env={**os.environ, **(env or {})})


def strip_ts(text):
    doc = json.loads(text)
    doc.pop("timestamp")
    return doc


def test_tables_c(capsys):
    assert main(["tables", "--kind", "c", "--n", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "c" and doc["size"] == 2
    got = {(e["row"], e["col"]): e["value"] for e in doc["entries"]}
    assert got == {(1, 1): "2", (2, 1): "8", (2, 2): "24"}


def test_tables_r(capsys):
    assert main(["tables", "--kind", "r", "--N", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [(e["k"], e["value"]) for e in doc["entries"]] == [(1, "7/3"), (2, "31")]


@pytest.mark.parametrize("kind", ["U", "V", "h", "L", "D"])
def test_tables_other_kinds(kind, capsys):
    assert main(["tables", "--kind", kind, "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["entries"]


def test_verify_limit_report(capsys):
    assert main(["verify", "--suite", "limit", "--N", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["failed"] == 0
    labels = {r["paper_equation_label"] for r in doc["records"]}
    assert "limit_equation" in labels
    for r in doc["records"]:
        assert {"name", "status", "residual", "tol"} <= set(r)


def test_verify_all_defaults_exit_zero():
    proc = run("verify", "--suite", "all")
    assert proc.returncode == 0, proc.stdout[-2000:]


def test_impossible_tolerance_exits_one():
    proc = run("verify", "--suite", "ramanujan", "--tol", "1e-200", "--precision-bits", "64")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["summary"]["failed"] > 0


@pytest.mark.parametrize("args", [
    ["verify", "--suite", "bogus"],
    ["verify", "--precision-bits", "abc"],
    ["verify", "--tol", "-1"],
    ["verify", "--precision-bits", "8"],
    ["tables", "--kind", "zz"],
    ["frobnicate"],
])
def test_malformed_exits_two(args):
    assert run(*args).returncode == 2


def test_json_deterministic_modulo_timestamp():
    a = run("verify", "--suite", "algebra")
    b = run("verify", "--suite", "algebra")
    assert a.returncode == b.returncode == 0
    assert strip_ts(a.stdout) == strip_ts(b.stdout)


def test_precision_env_var():
    proc = run("verify", "--suite", "ramanujan", env={"ZETARECUR_PRECISION": "128"})
    assert json.loads(proc.stdout)["config"]["precision_bits"] == 128
    flag = run("verify", "--suite", "ramanujan", "--precision-bits", "192", env={"ZETARECUR_PRECISION": "128"})
    assert json.loads(flag.stdout)["config"]["precision_bits"] == 192


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_other_formats(fmt, capsys):
    assert main(["verify", "--suite", "recurrence", "--format", fmt]) == 0
    out = capsys.readouterr().out
    assert "recurrence" in out
