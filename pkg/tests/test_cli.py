import json
import subprocess
import sys
from pathlib import Path

import pytest

from constellation_lab import cli
from constellation_lab.errors import InternalCheckError

PROBLEMS = Path(__file__).parent.parent / "problems"


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "constellation_lab.cli", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def result(*args):
    code, out, err = run(*args)
    assert code == 0, err
    return json.loads(out)["result"]


def test_check_free_orbit_is_stable():
    r = result("check", "--input", str(PROBLEMS / "z3_free_orbit.clab"))
    assert r["verdict"]["status"] == "STABLE" and r["verdict"]["exact"]


def test_check_nilpotent_reports_witness():
    r = result("check", "--input", str(PROBLEMS / "z3_nilpotent.clab"))
    v = r["verdict"]
    assert v["status"] == "UNSTABLE" and v["value"] == "-1"
    assert v["witness"]["window"] == {"1": 1}


def test_git_check_weights_on_worked_example():
    r = result("git-check", "--input", str(PROBLEMS / "z3_free_orbit.clab"))
    assert r["params"]["chi"] == {"0": "-1/2", "1": "1/2"}
    assert r["params"]["kappa_f"] == "5" and r["params"]["dim_a"] == 2
    assert sorted(w["mu"] for w in r["weights"]) == ["4", "6"]
    assert r["git"]["status"] == "STABLE" and r["agree"]


def test_enumerate_counts():
    assert result("enumerate", "--input", str(PROBLEMS / "z2_ghilb.clab"))["stable_count"] == 2
    r = result("enumerate", "--input", str(PROBLEMS / "z3_ghilb.clab"))
    assert r["stable_count"] == 3 == r["monomial_ideal_count"]


def test_approx_reaches_bound():
    r = result("approx", "--input", str(PROBLEMS / "torus_asymmetric.clab"))
    assert r["limit"]["passed"]
    assert r["limit"]["rows"][1]["error"] == "7/72"


def test_approx_window_flag_overrides_task():
    r = result("approx", "--input", str(PROBLEMS / "torus_asymmetric.clab"), "--window", "8")
    assert not r["limit"]["passed"]


def test_choose_window():
    r = result("choose-window", "--input", str(PROBLEMS / "torus_asymmetric.clab"))
    assert r["choice"]["majorant"] == "2/3"
    assert r["choice"]["certificate"][0]["theta_tilde"] == "5/6"


def test_hilbert_chow():
    r = result("hilbert-chow", "--input", str(PROBLEMS / "z3_free_orbit.clab"))
    assert r["point"] == {"x^3": "1", "x*y": "0", "y^3": "0"}


def test_repeated_runs_are_byte_identical():
    args = ("git-check", "--input", str(PROBLEMS / "z3_nilpotent.clab"), "--seed", "7")
    assert run(*args)[1] == run(*args)[1]


def test_timing_flag_adds_field():
    code, out, _ = run("check", "--input", str(PROBLEMS / "z3_free_orbit.clab"), "--timing")
    assert code == 0 and "timing_seconds" in json.loads(out)


def test_unbalanced_theta_exits_2_with_value():
    code, out, err = run("derive-params", "--input", str(PROBLEMS / "z3_unbalanced.clab"))
    assert code == 2 and out == ""
    assert "pairing value: 1" in err


def test_missing_input_and_bad_file_exit_2(tmp_path):
    assert run("check")[0] == 2
    bad = tmp_path / "bad.clab"
    bad.write_text("[group]\nkind = cyclic 2\n[nope]\n")
    code, _, err = run("check", "--input", str(bad))
    assert code == 2 and "line 3" in err


def test_pattern_cap_exits_2():
    assert run("enumerate", "--input", str(PROBLEMS / "z3_ghilb.clab"), "--cap", "10")[0] == 2


def test_internal_check_failure_exits_3(monkeypatch, capsys):
    def broken(p, args):
        raise InternalCheckError("identity violated")

    monkeypatch.setitem(cli.RUNNERS, "check", broken)
    code = cli.main(["check", "--input", str(PROBLEMS / "z3_free_orbit.clab")])
    assert code == 3
    assert capsys.readouterr().out == ""


def test_unknown_subcommand_is_rejected():
    with pytest.raises(SystemExit) as err:
        cli.main(["frobnicate"])
    assert err.value.code == 2


def test_console_script_selftest():
    code, out, _ = run("selftest")
    assert code == 0 and json.loads(out)["result"]["violations"] == 0


def test_unexpected_exception_exits_3(monkeypatch, capsys):
    def broken(p, args):
        raise ZeroDivisionError("boom")

    monkeypatch.setitem(cli.RUNNERS, "check", broken)
    assert cli.main(["check", "--input", str(PROBLEMS / "z3_free_orbit.clab")]) == 3
    assert "ZeroDivisionError" in capsys.readouterr().err
