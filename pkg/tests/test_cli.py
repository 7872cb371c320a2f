import json
import subprocess
import sys

from slicecalc.cli import main

RUN = [sys.executable, "-m", "slicecalc"]


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_selected_check(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        [
            "verify",
            "--seed",
            "3",
            "--units",
            "12",
            "--points",
            "24",
            "--select",
            "counterexamples",
            "--json",
            str(report_path),
        ],
        capsys,
    )
    assert code == 0
    assert "[PASS] counterexamples" in out
    report = json.loads(report_path.read_text())
    assert report["all_passed"] is True
    assert [c["id"] for c in report["checks"]] == ["counterexamples"]
    detail = report["checks"][0]["detail"]
    assert detail["not-slice"] is True
    assert detail["left-multiplier-not-slice"] is True
    assert detail["slicewise-continuous-jump"] is True
    assert detail["clifford-analogue"] is True


def test_verify_rejects_unknown_selector(capsys):
    code, _, err = run_cli(["verify", "--select", "no-such-check"], capsys)
    assert code == 2
    assert "unknown check ids" in err


def test_verify_env_seed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SLICECALC_SEED", "11")
    p1 = tmp_path / "a.json"
    code, _, _ = run_cli(
        ["verify", "--units", "8", "--points", "16", "--select", "taylor-independence",
         "--json", str(p1)],
        capsys,
    )
    assert code == 0
    monkeypatch.delenv("SLICECALC_SEED")
    p2 = tmp_path / "b.json"
    code, _, _ = run_cli(
        ["verify", "--seed", "11", "--units", "8", "--points", "16",
         "--select", "taylor-independence", "--json", str(p2)],
        capsys,
    )
    assert code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_decompose_builtin_conjugate(capsys):
    code, out, _ = run_cli(["decompose", "--input", "xbar", "--order", "2"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["recomposition_verified"] is True
    assert report["component_count"] == 2
    assert report["components"][0] == {"f1_terms": [], "f2_terms": []}


def test_decompose_wrong_order_exits_one(tmp_path, capsys):
    # x-bar^2 needs order 3, so order 2 is a mathematical failure
    spec = {
        "representation": "stem",
        "f1_terms": [
            {"exponents": [2, 0], "coefficient": {"1": "1"}},
            {"exponents": [0, 2], "coefficient": {"1": "-1"}},
        ],
        "f2_terms": [{"exponents": [1, 1], "coefficient": {"1": "-2"}}],
    }
    path = tmp_path / "xbar2.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run_cli(["decompose", "--input", str(path), "--order", "2"], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["error"] == "not-polyanalytic-of-order"
    assert report["residual_stem"]["f1_terms"]  # nonzero residual is reported
    code, out, _ = run_cli(["decompose", "--input", str(path), "--order", "3"], capsys)
    assert code == 0
    assert json.loads(out)["recomposition_verified"] is True


def test_decompose_rejects_point_functions(capsys):
    code, _, err = run_cli(["decompose", "--input", "v", "--order", "2"], capsys)
    assert code == 2
    assert "stem-represented" in err


def test_classify_builtins(capsys):
    code, out, _ = run_cli(["classify", "--input", "x"], capsys)
    assert code == 0
    report = json.loads(out)
    assert (report["sbs_order"], report["is_slice"], report["global_order"]) == (1, True, 1)

    code, out, _ = run_cli(["classify", "--input", "v"], capsys)
    assert code == 0
    report = json.loads(out)
    assert (report["sbs_order"], report["is_slice"], report["global_order"]) == (
        2,
        False,
        None,
    )
    assert report["witness"]["H"] == {"i": "1/1"}
    assert report["witness"]["K"] == {"j": "1/1"}

    code, out, _ = run_cli(["classify", "--input", "v_m"], capsys)
    report = json.loads(out)
    assert report["signature"] == {"kind": "clifford", "m": 3}
    assert (report["sbs_order"], report["is_slice"]) == (2, False)


def test_classify_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(["classify", "--input", str(bad)], capsys)
    assert code == 2
    assert "cannot parse" in err
    code, _, err = run_cli(["classify", "--input", "missing.json"], capsys)
    assert code == 2


def test_module_entry_point_runs():
    proc = subprocess.run(
        RUN + ["classify", "--input", "xbar"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["global_order"] == 2
