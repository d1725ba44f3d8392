import json
import subprocess
import sys

import pytest

from kflag.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_class_a1_mc(capsys):
    code, out, _ = run(capsys, "class", "--cartan", "A1", "--kind", "mc", "--w", "s1")
    assert code == 0
    assert "at id: x1^2*y + x1^2" in out
    assert "at s1: 1 + x1^-2*y" in out


def test_class_word_reduction(capsys):
    _, a, _ = run(capsys, "class", "--cartan", "A2", "--kind", "mc", "--w", "s1 s1", "--format", "json")
    _, b, _ = run(capsys, "class", "--cartan", "A2", "--kind", "mc", "--w", "", "--format", "json")
    assert json.loads(a)["values"] == json.loads(b)["values"]


def test_chi_and_whittaker(capsys):
    code, out, _ = run(capsys, "chi", "--cartan", "A1", "--w", "s1", "--lambda", "-1", "--class", "schubert")
    assert code == 0 and "x1 + x1^-1" in out and "EQUAL" in out
    code, out, _ = run(capsys, "whittaker", "--cartan", "A1", "--w", "s1", "--lambda", "-1")
    assert code == 0 and "x1^3*y + x1*y + x1" in out


def test_cs_json(capsys):
    code, out, _ = run(capsys, "cs", "--cartan", "A1", "--lambda=-1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["equal"] and len(data["checks"]) == 2


def test_poincare_outputs(capsys):
    code, out, _ = run(capsys, "poincare", "--cartan", "A2", "--w", "s1 s2 s1")
    assert code == 0 and "q^3 + 2*q^2 + 2*q + 1" in out and "EQUAL" in out
    code, out, _ = run(capsys, "poincare", "--cartan", "A3", "--w", "s2 s1 s3 s2")
    assert code == 0 and "NOT-RATIONALLY-SMOOTH" in out and "skipped" in out
    code, out, _ = run(capsys, "poincare", "--cartan", "G2", "--w", "s1 s2 s1 s2 s1 s2", "--format", "json")
    data = json.loads(out)
    assert data["reflection_heights"] == [1, 1, 2, 3, 4, 5] and data["verdict"] == "EQUAL"
    code, out, _ = run(capsys, "poincare", "--cartan", "B2", "--w", "s2s1s2")
    assert code == 0 and "DISCREPANCY" in out
    code, out, _ = run(capsys, "poincare", "--cartan", "A1", "--fixture", "P1")
    assert code == 0 and "PASS" in out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["class", "--cartan", "A2", "--w", "s3"], 2),
        (["class", "--cartan", "A2", "--w", "t1"], 2),
        (["class", "--cartan", "A2", "--kind", "nope"], 2),
        (["chi", "--cartan", "A2", "--lambda", "1"], 2),
        (["chi", "--cartan", "A2", "--lambda", "a,b"], 2),
        (["frobnicate"], 2),
        ([], 2),
        (["class", "--cartan", "E9"], 3),
        (["class", "--cartan", "Q2"], 3),
        (["class", "--cartan", "E8"], 3),
        (["verify", "--cartan", "A1", "--suite", "bogus"], 2),
        (["poincare", "--cartan", "A1", "--fixture", "/nonexistent.json"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--cartan", "A1", "--suite", "all", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0 and data["checks"]


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "kflag", "verify", "--cartan", "A1", "--suite", "all", "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
