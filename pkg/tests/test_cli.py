import json
import subprocess
import sys
from fractions import Fraction

import pytest

from motivic_satake.cli import CliError, RunConfig, main, parse_coweight, parse_hw, parse_ic, render, run_command
from motivic_satake.root_datum import gl, root_datum_to_json, sp
from motivic_satake.verification import check_hecke_oracle, emit_verification_report, entry_box, run_suite, suite_checks


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parsers():
    assert parse_coweight("(1,0)") == (1, 0)
    assert parse_coweight(" ( -2 , 3 ) ") == (-2, 3)
    assert parse_coweight("(2)") == (2,)
    assert parse_hw("mu=(2);n=-1") == ((2,), -1)
    assert parse_ic("(1,0);0") == ((1, 0), 0)
    with pytest.raises(CliError):
        parse_coweight("1;0")
    with pytest.raises(CliError):
        parse_hw("n=1")


def test_dual_group_extended(capsys):
    code, out, _ = run(capsys, "dual-group", "--group", "SL2", "--extended", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["product_datum"] is True and doc["result"]["dual"]["name"] == "PGL2"
    code, out, _ = run(capsys, "dual-group", "--group", "PGL2", "--extended", "--json")
    assert json.loads(out)["result"]["gl_with_det"] is True


def test_strata_bound_zero(capsys):
    code, out, _ = run(capsys, "strata", "--group", "GL2", "--bound", "0", "--json")
    strata = json.loads(out)["result"]["strata"]
    assert [(s["label"], s["dim"]) for s in strata] == [("(0,0)", 0)]
    # on the Iwahori level every Omega-class has exactly one stratum of dimension 0
    code, out, _ = run(capsys, "strata", "--group", "GL2", "--facet", "iwahori", "--bound", "0",
                       "--omega", "(0,0);(1,0);(1,1)", "--json")
    strata = json.loads(out)["result"]["strata"]
    assert len(strata) == 3 and all(s["dim"] == 0 for s in strata)
    code, out, _ = run(capsys, "strata", "--group", "GL2", "--bound", "1", "--omega", "(0,0);(1,0)", "--json")
    assert [s["label"] for s in json.loads(out)["result"]["strata"]] == ["(0,0)", "(1,0)"]


def test_strata_dot(capsys):
    code, out, _ = run(capsys, "strata", "--group", "GL2", "--bound", "2", "--omega", "(1,0);(1,1)", "--dot")
    assert code == 0 and out.startswith("digraph") and '"(1,1)" -> "(2,0)"' in out


def test_qanalog_and_tensor(capsys):
    code, out, _ = run(capsys, "qanalog", "--group", "GL2", "--mu", "(2,0)", "--lambda", "(1,1)", "--json")
    assert json.loads(out)["result"]["poly"] == {"2": 1}
    code, out, _ = run(capsys, "tensor", "--group", "PGL2", "--hw", "mu=(2);n=0", "--hw", "mu=(2);n=0", "--json")
    prod = json.loads(out)["result"]["product"]
    assert [(p["mu"], p["n"], p["coeff"]) for p in prod] == [([0], -2, 1), ([2], -1, 1), ([4], 0, 1)]


def test_hecke_mult_with_oracle(capsys):
    code, out, _ = run(capsys, "hecke", "mult", "--group", "GL2", "--mu", "(1,0)", "--lambda", "(1,0)",
                       "--oracle", "--q", "3", "--json")
    res = json.loads(out)["result"]
    assert res["basis"] == "c"
    assert res["constants"] == {"(1,1)": {"0": 1, "2": 1}, "(2,0)": {"0": 1}}
    assert res["oracle"] == {"3": {"(1,1)": 4, "(2,0)": 1}} and res["agree"]


def test_convolve_ic_and_satake(capsys):
    code, out, _ = run(capsys, "convolve-ic", "--group", "GL2", "--ic", "(1,0);0", "--ic", "(1,0);0", "--trace", "--json")
    res = json.loads(out)["result"]
    assert res["product"] == [{"coeff": 1, "mu": [1, 1], "n": -1}, {"coeff": 1, "mu": [2, 0], "n": 0}]
    assert res["trace"]["constants"]["(1,1)"] == {"0": 1, "2": 1}
    code, out, _ = run(capsys, "satake", "--group", "GL2", "--mu", "(2,0)", "--json")
    assert json.loads(out)["result"]["ic_function"] == {"(1,1)": {"0": 1}, "(2,0)": {"0": 1}}


def test_group_from_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(root_datum_to_json(sp(4))))
    code, out, _ = run(capsys, "satake", "--group", str(path), "--mu", "(1,0)", "--json")
    assert code == 0


@pytest.mark.parametrize("argv,kind", [
    (["strata", "--group", "E9"], "unknown-group"),
    (["qanalog", "--group", "GL2", "--mu", "(0,2)", "--lambda", "(1,1)"], "bad-coweight"),
    (["qanalog", "--group", "GL2", "--mu", "x", "--lambda", "(1,1)"], "bad-coweight"),
    (["hecke", "mult", "--group", "GL2", "--mu", "(1,0)", "--lambda", "(1,0)", "--oracle", "--q", "6"], "oracle"),
    (["hecke", "mult", "--group", "Sp4", "--mu", "(1,0)", "--lambda", "(1,0)", "--oracle", "--q", "3"], "bad-config"),
    (["verify", "--suite", "nope"], "bad-config"),
])
def test_errors_are_machine_readable(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert json.loads(err)["error"]["kind"] == kind


def test_run_config_validation():
    with pytest.raises(CliError):
        RunConfig("frobnicate")
    with pytest.raises(CliError):
        RunConfig("strata", "GL2", bound=-1)


def test_verify_gl2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "satake", "--group", "GL2", "--q", "2,3,5")
    assert code == 0 and out.strip().endswith("checks passed")
    assert "FAIL" not in out


def test_empty_suite():
    report = emit_verification_report(run_suite(suite_checks("empty")))
    assert report == {"ok": True, "n_checks": 0, "n_failed": 0, "checks": []}


def test_fault_injection_reports_witness():
    def perturb(d, mu, lam, nu, q, value):
        return value + 1 if (mu, lam, nu, q) == ((1, 0), (1, 0), (1, 1), 3) else value

    res = check_hecke_oracle([(gl(2), entry_box(2, 0, 1))], qs=(2, 3), perturb=perturb)
    assert not res.ok
    w = res.counterexample
    assert (w["mu"], w["lam"], w["nu"], w["q"]) == ("(1,0)", "(1,0)", "(1,1)", 3)
    assert (w["expected"], w["actual"]) == ("4", "5")
    report = emit_verification_report([res])
    assert not report["ok"] and report["n_failed"] == 1


def test_output_independent_of_thread_count():
    outs = []
    for threads in (1, 1, 3):
        cfg = RunConfig("verify", "GL2", {"suite": "satake"}, "json", (2, 3), None, threads)
        outs.append(render(run_command(cfg), "json"))
    assert outs[0] == outs[1] == outs[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motivic_satake", "qanalog", "--group", "GL3",
                           "--mu", "(2,0,0)", "--lambda", "(1,1,0)"], capture_output=True, text=True)
    assert proc.returncode == 0 and "q_form" in proc.stdout
