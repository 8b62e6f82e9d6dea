import io
import json
import subprocess
import sys

import pytest

from cliffgroups.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval():
    code, out, _ = run("eval", "--p", "4", "--q", "0", "psi(1 + 2*e123)")
    assert code == 0 and out == "5\n"


def test_eval_complex():
    code, out, _ = run("eval", "--complex", "--n", "2", "(1 + i*e12)*(1 - i*e12)")
    assert code == 0 and out == "0\n"


def test_member_psi_diagnostic():
    code, out, _ = run("member", "--p", "4", "--q", "0", "--group", "A", "1 + 2*e123")
    assert code == 0 and out.splitlines() == ["true", "psi = 5"]


def test_member_conjugation_diagnostic():
    code, out, _ = run("member", "--p", "1", "--q", "3", "--group", "GammaBar:1", "1 + e1234")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "false"
    assert "T e1 T^-1 = -e234" in lines[1]


def test_member_gamma_fails_at_n6():
    code, out, _ = run("member", "--p", "6", "--group", "Gamma", "e12 + e3456")
    assert out.startswith("false\n") and "-e23456" in out


@pytest.mark.parametrize("argv", [
    ("eval", "1 + e1"),                                        # no signature
    ("eval", "--p", "4", "e + 1"),                             # bare e
    ("eval", "--p", "0", "--q", "0", "1"),                     # n = 0
    ("member", "--p", "4", "--group", "Gamma:9", "1"),         # grade too big
    ("member", "--p", "4", "--group", "Nope", "1"),
    ("member", "--complex", "--n", "3", "--group", "Spin", "1"),
    ("frobnicate",),
    ("table1", "--max-n", "11"),
])
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2


def test_singular_exit_1():
    code, _, err = run("eval", "--p", "2", "inv(1 + e1)")
    assert code == 1 and "error" in err


def test_member_of_singular_element_exit_1():
    code, _, err = run("member", "--p", "2", "--group", "P", "1 + e1")
    assert code == 1


def test_table1_text_and_json():
    code, out, _ = run("table1", "--max-n", "6")
    assert code == 0 and "match" in out.splitlines()[0]
    code, out, _ = run("table1", "--max-n", "4", "--json")
    rows = json.loads(out)
    assert all(r["match"] for r in rows)


def test_catalog():
    code, out, _ = run("catalog", "--max-n", "3")
    assert code == 0
    assert "n = 1: 1 distinct" in out and "n = 3: 2 distinct" in out


def test_counterexamples_json():
    code, out, _ = run("counterexamples", "--json")
    doc = json.loads(out)
    assert code == 0 and all(d["ok"] for d in doc)
    ids = {d["id"] for d in doc}
    assert {"P-not-A", "A-not-Q", "Qprime-not-Q", "P-not-Qprime", "bar2-not-bar1", "Q-not-Gamma"} <= ids


def test_lattice():
    code, out, _ = run("lattice")
    assert code == 0 and out.startswith("digraph")


def test_verify_small_text():
    code, out, _ = run("verify", "--max-n", "2", "--real-only")
    assert code == 0 and out.rstrip().endswith("checks passed")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cliffgroups", "eval", "--p", "3", "e12*e23"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout == "e13\n"
