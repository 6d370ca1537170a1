import json
import subprocess
import sys

import pytest

from gdet.cli import main

PLUS_2_16 = "1,1,1,1,1,1,-1,-1,1,0,0,-1,1,-1,-1,1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_det(capsys):
    assert run(capsys, "det", "--coeffs", "1" + ",0" * 15)[:2] == (0, "1\n")
    code, out, _ = run(capsys, "det", "--coeffs", "2,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1")
    assert (code, out.strip()) == (0, "17")


def test_det_other_groups(capsys):
    code, out, _ = run(capsys, "det", "--group", "z2cubed", "--coeffs", "1,1,0,0,0,0,0,0", "--json")
    assert code == 0 and json.loads(out)["value"] == 0
    code, out, _ = run(capsys, "det", "--group", "z2xd8", "--coeffs", "1" + ",0" * 15)
    assert out.strip() == "1"


@pytest.mark.parametrize("coeffs", ["1,0,0,0,0,0,0,0,0,0,0,0,0,0,0", "1,a", ""])
def test_det_usage_errors(capsys, coeffs):
    code, _, err = run(capsys, "det", "--coeffs", coeffs)
    assert code == 1 and "error" in err


def test_missing_arguments(capsys):
    assert run(capsys, "det")[0] == 1
    assert run(capsys, "check")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_factored(capsys):
    code, out, _ = run(capsys, "factored", f"--coeffs={PLUS_2_16}")
    assert code == 0
    assert out.strip() == "M=4096 U=-2 V=0 A=4 value=65536 oracle=match"
    code, out, _ = run(capsys, "factored", "--coeffs", "1" + ",0" * 15, "--json")
    rec = json.loads(out)
    assert (rec["M"], rec["U"], rec["V"], rec["A"], rec["value"], rec["match"]) == (1, 1, 0, 1, 1, True)


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--n", "217", "--json")
    rec = json.loads(out)
    assert code == 2
    assert (rec["verdict"], rec["reason"]) == ("not_achievable", "nine_mod_16_rigid_primes")
    code, out, _ = run(capsys, "check", "--n", "57")
    assert code == 0 and "nine_mod_16_with_flex_prime" in out


def test_witness_round_trips_through_det(capsys):
    for n in (25, -39, 17, 3 * 2 ** 16, 0):
        code, out, _ = run(capsys, "witness", "--n", str(n), "--json")
        rec = json.loads(out)
        assert code == 0
        code, out, _ = run(capsys, "det", "--coeffs=" + ",".join(map(str, rec["tuple"])), "--json")
        assert json.loads(out)["value"] == n
    code, out, _ = run(capsys, "witness", "--n", "25", "--json")
    rec = json.loads(out)
    assert rec["family"] == "odd_5family" and rec["params"] == {"m": 0, "k": 0}


def test_witness_human_output(capsys):
    code, out, _ = run(capsys, "witness", "--n", "25")
    assert out.splitlines()[0] == "25: odd_5family m=0 k=0"
    assert out.splitlines()[1].startswith("--coeffs=1,1,1,0")
    assert run(capsys, "witness", "--n", "32768")[0] == 2


def test_large_integers_in_full(capsys):
    n = 2 ** 16 * (4 * 10 ** 30 + 1)
    code, out, _ = run(capsys, "witness", "--n", str(n), "--json")
    assert code == 0
    assert f'"target": {n}' in out


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--box=0,1", "--json", "--workers", "1")
    rec = json.loads(out)
    assert code == 0
    assert rec["candidates"] == 65536 and rec["violation_count"] == 0
    code, out, _ = run(capsys, "scan", "--box=-2,2", "--group", "z2xd8", "--budget", "500", "--workers", "1")
    assert code == 0 and "violation_count: 0" in out


def test_scan_reports_violations(capsys, monkeypatch):
    from gdet import classification

    monkeypatch.setattr(classification, "_value_ok", lambda v: v != 1)
    code, out, _ = run(capsys, "scan", "--box=0,1", "--json", "--workers", "1")
    assert code == 3
    assert json.loads(out)["violation_count"] > 0


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--trials", "300", "--bound", "50", "--json")
    assert code == 0 and json.loads(out)["violations"] == []


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gdet", "check", "--n", "41"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "nine_mod_16_rigid_primes" in proc.stdout
