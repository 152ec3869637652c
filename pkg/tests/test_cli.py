import io
import json
import os
from pathlib import Path

import pytest

from monopos.cli import VerdictReport, emit_report, exit_code, parse_report, run

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
FIX = HERE / "fixtures"

# (golden name, argv, expected exit code)
CASES = [
    ("fn_expand_n2", ["fn-expand", "--n", "2", "--order", "3"], 0),
    ("verify_main_n2", ["verify-main", "--n", "2", "--order", "12"], 0),
    ("verify_adjacent_n3", ["verify", "--lemma", "adjacent", "--n", "3", "--order", "5"], 0),
    ("verify_quot_n3", ["verify", "--lemma", "quot", "--n", "3", "--order", "5"], 0),
    ("verify_quot1_n3", ["verify", "--lemma", "quot1", "--n", "3", "--order", "5"], 0),
    ("verify_vn_n3", ["verify", "--lemma", "vn", "--n", "3", "--order", "5"], 0),
    ("verify_wn_n3", ["verify", "--lemma", "wn", "--n", "3", "--order", "5"], 0),
    ("verify_cor1_n3", ["verify", "--lemma", "cor1", "--n", "3", "--k", "5"], 0),
    ("verify_diff1_n5", ["verify", "--lemma", "diff1", "--n", "5"], 0),
    ("verify_trace_n3", ["verify", "--lemma", "trace", "--n", "3", "--k", "6"], 0),
    ("verify_determinants_n2", ["verify", "--lemma", "determinants", "--n", "2", "--k", "4"], 0),
    ("verify_xn2_n4", ["verify", "--lemma", "xn2", "--n", "4", "--order", "20"], 0),
    ("min_root_no_n_exists", ["min-root", "--f-coeffs", "1,0,-1,-1,0,1", "--order", "60", "--nmax", "20"], 1),
    ("min_root_nine_tenths", ["min-root", "--spectrum", str(FIX / "nine_tenths.json"), "--order", "60", "--nmax", "5"], 0),
    ("diagnostics_nine_tenths", ["diagnostics", "--lambdas=1,9/10,-9/10", "--kmax", "6"], 0),
    ("diagnostics_pairs", ["diagnostics", "--spectrum", str(FIX / "pairs.json"), "--kmax", "4"], 0),
    ("diagnostics_negative_trace", ["diagnostics", "--lambdas=1,-2", "--kmax", "4"], 1),
    ("bh_realize", ["bh-realize", "--spectrum", str(FIX / "bh.json"), "--mmax", "10"], 0),
    ("gamma_det_n2_m2", ["gamma-det", "--n", "2", "--m", "2"], 0),
]


def invoke(argv, env_order=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def strip_runtime(text):
    d = json.loads(text)
    d.pop("runtime_ms")
    return json.dumps(d, indent=2) + "\n"


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code):
    got_code, out, _ = invoke(argv)
    assert got_code == code
    path = GOLDEN / f"{name}.json"
    body = strip_runtime(out)
    if os.environ.get("MONOPOS_REGEN_GOLDEN"):
        path.write_text(body)
    assert body == path.read_text()


def test_golden_stable_across_runs():
    argv = CASES[1][1]
    assert strip_runtime(invoke(argv)[1]) == strip_runtime(invoke(argv)[1])


def test_verify_main_report_content():
    _, out, _ = invoke(["verify-main", "--n", "2", "--order", "12"])
    gammas = json.loads(out)["data"]["gammas"]
    assert gammas[:2] == ["x1", "1/2*x2"]


def test_counterexample_report_content():
    _, out, _ = invoke(["min-root", "--f-coeffs", "1,0,-1,-1,0,1", "--order", "60", "--nmax", "20"])
    v = json.loads(out)["verdicts"][0]
    assert all(p["violation"]["t_power"] == 5 for p in v["per_n"]) and len(v["per_n"]) == 20
    assert v["no_n_certificate"]["fires"] and v["no_n_certificate"]["nonpositive_power_sums"][0] == 1


def test_expect_violated_inverts():
    argv = ["min-root", "--f-coeffs", "1,0,-1,-1,0,1", "--order", "10", "--nmax", "2"]
    assert invoke(argv)[0] == 1
    assert invoke(argv + ["--expect", "violated"])[0] == 0
    assert invoke(["verify", "--lemma", "diff1", "--n", "2", "--expect", "violated"])[0] == 1


@pytest.mark.parametrize("argv", [
    ["verify-main", "--n", "2", "--bogus"],
    ["min-root", "--lambdas=1,x/2"],
    ["min-root", "--lambdas=1,1/0"],
    ["min-root", "--spectrum", "/nonexistent/spec.json"],
    ["min-root"],
    ["verify", "--lemma", "nope", "--n", "2"],
    ["verify", "--lemma", "vn", "--n", "1"],
    ["verify", "--lemma", "quot", "--n", "3", "--k", "3"],
    ["verify-main", "--n", "0"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, out, err = invoke(argv)
    assert code == 2 and out == "" and err


def test_env_order_override(monkeypatch):
    monkeypatch.setenv("MONOPOS_ORDER", "5")
    _, out, _ = invoke(["verify-main", "--n", "2"])
    assert json.loads(out)["certified_order"] == 5
    monkeypatch.setenv("MONOPOS_ORDER", "five")
    assert invoke(["verify-main", "--n", "2"])[0] == 2


def test_text_format():
    code, out, _ = invoke(["min-root", "--f-coeffs", "1,0,-1,-1,0,1", "--order", "10", "--nmax", "2",
                           "--format", "text"])
    assert code == 1
    assert "N=2: violated (first negative at t^5)" in out
    assert "no N can work" in out


def test_report_round_trip():
    _, out, _ = invoke(["bh-realize", "--spectrum", str(FIX / "bh.json"), "--mmax", "6"])
    r = parse_report(out)
    assert emit_report(r) == out.rstrip("\n")
    assert parse_report(emit_report(r)) == r


def test_empty_report():
    r = VerdictReport("noop", {})
    assert json.loads(emit_report(r))["verdicts"] == []
    assert exit_code(r) == 0


def test_exit_code_depends_on_status_only():
    ok = VerdictReport("x", {}, [{"status": "holds"}], runtime_ms=5)
    bad = VerdictReport("x", {}, [{"status": "holds"}, {"status": "violated"}], runtime_ms=0)
    assert exit_code(ok) == 0 and exit_code(bad) == 1
    assert exit_code(bad, "violated") == 0


def test_json_has_no_floats_outside_advisory():
    _, out, _ = invoke(["diagnostics", "--f-coeffs", "1,-3,2", "--kmax", "4"])
    d = json.loads(out)

    def walk(node, path):
        if isinstance(node, float):
            assert "perron" in path
        elif isinstance(node, dict):
            for k, v in node.items():
                walk(v, path + (k,))
        elif isinstance(node, list):
            for v in node:
                walk(v, path)

    walk(d, ())
