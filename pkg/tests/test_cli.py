import json
import subprocess
import sys

import pytest

from ghzbell import cli
from ghzbell.report import Check, Report, num


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = cli.main([*argv, "--out", str(out)])
    data = json.loads(out.read_text()) if out.exists() else None
    return code, data, out


def checks(data):
    return {c["name"]: c for c in data["checks"]}


def test_verify_ghz(tmp_path):
    code, data, _ = run(tmp_path, "verify-ghz")
    assert code == 0 and data["status"] == "pass"
    c = checks(data)
    assert c["identity A1A2A3A4=-I"]["pass"]
    assert c["eigenvalue A4"]["lhs"] == -1
    assert c["expansion xyy nonzero terms"]["lhs"] == 4
    assert all(ch["tolerance"] == 1e-12 for ch in data["checks"] if ch["name"].startswith("identity"))


def test_failed_check_gives_exit_one(tmp_path):
    code, data, _ = run(tmp_path, "verify-ghz", "--tol", "1e-20")
    assert code == 1 and data["status"] == "fail"
    assert any(not ch["pass"] for ch in data["checks"])


def test_scan(tmp_path):
    code, data, _ = run(tmp_path, "scan-counterfactuals")
    assert code == 0
    c = checks(data)
    assert c["satisfy C14a,C14b,C14c"]["lhs"] == 8
    assert c["satisfy C14a,C14b,C14c,C16b"]["lhs"] == 0
    assert len(data["tables"]["local assignments"]) == 8


def test_scan_audit_and_bad_constraint(tmp_path):
    code, data, _ = run(tmp_path, "scan-counterfactuals", "--constraints", "C14a,C16b")
    assert code == 0 and data["tables"]["audit"]["count"] == 16
    code, _, _ = run(tmp_path, "scan-counterfactuals", "--constraints", "C99", name="bad.json")
    assert code == 2


def test_measure_product_sequence(tmp_path):
    code, data, _ = run(tmp_path, "measure", "--sequence", "A1,A2,A1", "--mode", "product", "--trials", "10000")
    assert code == 0
    joint = {row["outcome"]: row for row in data["tables"]["joint"]}
    assert joint["+1,+1,+1"]["frequency"] == 1.0


def test_measure_spin_then_product(tmp_path):
    code, data, _ = run(tmp_path, "measure", "--sequence", "A1,A2", "--mode", "spin,product")
    assert code == 0
    step2 = data["tables"]["steps"][1]
    assert step2["exact_plus"] == pytest.approx(0.5, abs=1e-12)
    assert abs(step2["frequency_plus"] - 0.5) <= 0.02


def test_measure_usage_errors(tmp_path):
    assert run(tmp_path, "measure", "--sequence", "A1,A9")[0] == 2
    assert run(tmp_path, "measure", "--sequence", "A1,A2", "--mode", "spin,product,spin")[0] == 2
    assert run(tmp_path, "measure", "--sequence", "A1", "--order", "1,1,2")[0] == 2
    assert run(tmp_path, "measure", "--sequence", "A1", "--trials", "0")[0] == 2


def test_unknown_flags_and_commands():
    assert cli.main(["verify-ghz", "--bogus"]) == 2
    assert cli.main(["frobnicate"]) == 2
    assert cli.main([]) == 2
    assert cli.main(["bell-sim", "--angles", "0,1"]) == 2
    with pytest.raises(cli.UsageError):
        cli.run_command(cli.Command("frobnicate"))


def test_bell_audit_example(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("a,b,c\n1,-1,1\n-1,-1,1\n")
    code, data, _ = run(tmp_path, "bell-audit", "--input", str(f), "--form", "bell3")
    assert code == 0
    assert data["tables"]["inequality"]["satisfied"] is True
    assert [r["pair"] for r in data["tables"]["correlations"]] == ["a-b", "a-c", "b-c"]


def test_bell_audit_chsh_and_columns(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("w,x,y,z\n1,-1,1,1\n-1,-1,1,-1\n1,1,1,1\n")
    code, data, _ = run(tmp_path, "bell-audit", "--input", str(f), "--form", "chsh")
    assert code == 0 and data["tables"]["inequality"]["form"] == "chsh"
    code, data, _ = run(tmp_path, "bell-audit", "--input", str(f), "--columns", "z,y,x")
    assert code == 0 and [i["pair"] for i in data["tables"]["inequality"]["inputs"]] == ["z-y", "z-x", "y-x"]
    assert run(tmp_path, "bell-audit", "--input", str(f), "--columns", "q,y,x")[0] == 2
    assert run(tmp_path, "bell-audit", "--input", str(f), "--columns", "x,y")[0] == 2


def test_bell_audit_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,1,1\n1,0,1\n")
    assert run(tmp_path, "bell-audit", "--input", str(bad))[0] == 2
    assert "line 3" in capsys.readouterr().err
    hdr = tmp_path / "hdr.csv"
    hdr.write_text("a,b,c\n")
    assert run(tmp_path, "bell-audit", "--input", str(hdr))[0] == 2
    assert run(tmp_path, "bell-audit", "--input", str(tmp_path / "missing.csv"))[0] == 2


def test_bell_sim_independent_reports_violation_as_finding(tmp_path):
    code, data, _ = run(tmp_path, "bell-sim", "--angles", "0,60,120", "--mode", "independent")
    assert code == 0
    finding = data["findings"][0]
    assert finding["violated"] is True
    assert finding["margin"] == pytest.approx(0.5, abs=0.03)
    assert [r["pair"] for r in data["tables"]["correlations"]] == ["a-b", "a-c", "b-c"]


def test_bell_sim_lhv_round_trip(tmp_path):
    dump = tmp_path / "lhv.csv"
    code, sim, _ = run(tmp_path, "bell-sim", "--angles", "0,30,90", "--mode", "lhv-common",
                       "--trials", "20000", "--dump", str(dump))
    assert code == 0
    assert sim["tables"]["form"]["closest"] == "linear"
    code, audit, _ = run(tmp_path, "bell-audit", "--input", str(dump), name="audit.json")
    assert code == 0
    assert audit["tables"]["inequality"]["inputs"] == sim["tables"]["inequality"]["inputs"]
    assert audit["tables"]["inequality"]["lhs"] == sim["tables"]["inequality"]["lhs"]


def test_bell_sim_independent_dump_audits_as_satisfied(tmp_path):
    dump = tmp_path / "ind.csv"
    code, sim, _ = run(tmp_path, "bell-sim", "--angles", "0,60,120", "--trials", "5000", "--dump", str(dump))
    assert code == 0
    code, audit, _ = run(tmp_path, "bell-audit", "--input", str(dump), name="audit.json")
    assert code == 0
    corr = {r["pair"]: r["correlation"] for r in audit["tables"]["correlations"]}
    sim_corr = {r["pair"]: r["correlation"] for r in sim["tables"]["correlations"]}
    assert corr["ab.a-ab.b"] == sim_corr["a-b"]
    assert corr["ac.a-ac.c"] == sim_corr["a-c"]
    assert corr["bc.b-bc.c"] == sim_corr["b-c"]


def test_demo(tmp_path):
    code, data, _ = run(tmp_path, "demo", "--which", "rotations")
    assert code == 0
    assert data["tables"]["rotations"][0]["output"] == [0.0, -1.0, 0.0]
    code, data, _ = run(tmp_path, "demo", "--which", "polarizers")
    assert code == 0
    assert [r["transmitted"] for r in data["tables"]["polarizers"]] == [0.25, 0.0]


@pytest.mark.parametrize("argv", [
    ["verify-ghz"],
    ["scan-counterfactuals"],
    ["measure", "--sequence", "A1,A2", "--mode", "spin", "--trials", "3000", "--seed", "77"],
    ["bell-sim", "--angles", "0,45,22.5,67.5", "--trials", "3000", "--seed", "77"],
    ["bell-sim", "--angles", "0,30,90", "--mode", "lhv-common", "--trials", "3000", "--seed", "77"],
    ["demo", "--which", "polarizers"],
])
def test_reports_are_byte_identical(tmp_path, argv):
    _, _, a = run(tmp_path, *argv, name="a.json")
    _, _, b = run(tmp_path, *argv, name="b.json")
    assert a.read_bytes() == b.read_bytes()


def test_stdout_output_and_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ghzbell", "scan-counterfactuals"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "scan-counterfactuals"


def test_report_contract():
    rep = Report("x", {}, 1)
    rep.check("ok", 1.0, 1.0)
    rep.check("bad", 2.0, 1.0, 0.5, "le")
    data = rep.to_json()
    assert [c["pass"] for c in data["checks"]] == [True, False]
    assert rep.exit_code == 1 and data["status"] == "fail"
    assert not Check("eq", 1.0, 1.2, 0.1).passed


def test_number_rendering():
    assert num(1 / 3) == 0.333333333333
    assert num(-0.0) == 0.0 and str(num(-0.0)) == "0.0"
    assert num(7) == 7
    with pytest.raises(ValueError):
        num(float("nan"))
