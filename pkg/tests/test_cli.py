import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from catalgebra import algebra as alg
from catalgebra.cli import main
from catalgebra.document import load_document
from catalgebra.moebius import mobius
from catalgebra.rigs import RATIONAL

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", DATA / "s3_explicit.json")
    assert code == 0 and "category: valid" in out and "dagger: valid" in out


def test_validate_broken_associativity(capsys):
    code, out, _ = run(capsys, "validate", DATA / "broken_associativity.json", "--json")
    assert code == 1
    report = json.loads(out)
    assert not report["ok"] and not report["category"]["valid"]
    issue = report["category"]["issues"][0]
    assert issue["kind"] == "associativity" and len(issue["witness"]) == 3


def test_mobius_divisors_60(capsys):
    code, out, _ = run(capsys, "mobius", DATA / "divisors60.json")
    assert code == 0
    assert "residuals zero" in out
    line = next(l for l in out.splitlines() if l.split()[:1] == ["1->60"])
    assert line.split()[1] == "0"
    code, out, _ = run(capsys, "mobius", DATA / "divisors60.json", "--json")
    mu = json.loads(out)["mu"]
    assert mu["1->6"] == "1" and mu["1->12"] == "0" and mu["1->30"] == "-1"


def test_mul(capsys):
    code, out, _ = run(capsys, "mul", DATA / "matrices2.json", "a", "b", "--json")
    assert code == 0
    assert json.loads(out)["product"] == {"c11": "-2/3", "c12": "3", "c21": "-1/6", "c22": "0"}
    code, _, err = run(capsys, "mul", DATA / "matrices2.json", "a", "zz")
    assert code == 1 and "no element named 'zz'" in err


def test_state_check(capsys):
    code, out, _ = run(capsys, "state-check", DATA / "z2_half.json")
    assert code == 0 and "verdict: state" in out
    code, out, _ = run(capsys, "state-check", DATA / "z2_too_big.json", "--json")
    report = json.loads(out)
    assert code == 1 and report["verdict"] == "not_state"
    assert report["reason"] == "not positive semidefinite" and report["min_eigenvalue"] < 0


def test_state_check_exact_witness(capsys):
    code, out, _ = run(capsys, "state-check", DATA / "matrices2.json", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "state"


def test_gns_verify(capsys):
    code, out, _ = run(capsys, "gns", DATA / "z2_half.json", "--verify", 100, "--json")
    report = json.loads(out)
    assert code == 0 and report["quotient_dim"] == 2
    assert max(c["max_residual"] for c in report["verification"]) <= 1e-9
    assert all(c["trials"] in (1, 100, 500) for c in report["verification"])


def test_gns_exact(capsys):
    code, out, _ = run(capsys, "gns", DATA / "s3_explicit.json", "--verify", 20, "--json")
    report = json.loads(out)
    assert code == 0 and report["dimension"] == 6
    assert all(c["max_residual"] == 0 for c in report["verification"])


def test_gns_rejects_non_state(capsys):
    code, _, err = run(capsys, "gns", DATA / "z2_too_big.json")
    assert code == 2 and "NotAState" in err


def test_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"rig": "rational", "category": {"builder": "discrete", "n": 2}, "elements": {"a": ["1", "q"]}}')
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "elements.a[1]" in err


def test_json_round_trip_is_bit_exact(capsys):
    code, out, _ = run(capsys, "mobius", DATA / "divisors60.json", "--json")
    report = json.loads(out)
    assert json.dumps(report, indent=2) == out.rstrip("\n")
    doc = load_document(DATA / "divisors60.json")
    mu = mobius(doc.category, RATIONAL)
    labels = doc.category.arrow_labels
    assert {labels[c]: RATIONAL.parse(report["mu"][labels[c]]) for c in doc.category.arrows} == \
        {labels[c]: mu[c] for c in doc.category.arrows}
    code, out, _ = run(capsys, "mul", DATA / "matrices2.json", "a", "a", "--json")
    doc = load_document(DATA / "matrices2.json")
    prod = alg.convolve(doc.elements["a"], doc.elements["a"])
    got = json.loads(out)["product"]
    assert all(RATIONAL.parse(got[l]) == prod[c] for c, l in enumerate(doc.category.arrow_labels))


def test_seed_reproducibility(capsys):
    outs = [run(capsys, "gns", DATA / "z2_half.json", "--seed", s, "--json")[1] for s in (5, 5, 6)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "demo", "--seed", 3, "--verify", 10)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_negative_seed(capsys):
    assert run(capsys, "demo", "--seed", -1)[0] == 2


def test_demo_exits_zero(capsys):
    code, out, _ = run(capsys, "demo", "--verify", 20)
    assert code == 0 and "8/8 catalog entries passed" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "catalgebra", "validate", str(DATA / "divisors60.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "54 arrows" in proc.stdout
