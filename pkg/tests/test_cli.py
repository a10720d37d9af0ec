import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from conediag import cli

DATA = Path(__file__).resolve().parent.parent / "data"
EX1 = str(DATA / "sym3_quadratic.json")
EX2 = str(DATA / "sym4_cubic.json")

ANALYZE_KEYS = {
    "certificate",
    "command",
    "cone_point",
    "config",
    "error",
    "estimate",
    "input",
    "normalization",
    "quadratic",
    "schema",
    "skipped",
    "smooth_critical_points",
    "timings",
    "verdict",
}


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_input(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


# -- analyze -----------------------------------------------------------------

def test_analyze_example_one_full_report(capsys):
    code, rep = run_json(capsys, ["analyze", "--input", EX1])
    assert code == 0
    assert set(rep) == ANALYZE_KEYS
    assert rep["schema"] == 1
    assert rep["command"] == "analyze"
    assert rep["input"]["beta"] == "1"
    assert rep["input"]["dimension"] == 3
    assert (
        rep["input"]["polynomial"]
        == "1 - Z1 - Z2 - Z3 + 3/4*Z1*Z2 + 3/4*Z1*Z3 + 3/4*Z2*Z3"
    )
    assert rep["normalization"]["constant"] == "1"
    cone = rep["cone_point"]
    assert cone["Zstar"] == ["2/3", "2/3", "2/3"]
    assert cone["tstar"] == "2/3"
    assert cone["rational"] is True
    assert cone["candidates_on_minimal_torus"] == 1
    assert rep["smooth_critical_points"] == []
    assert rep["certificate"]["status"] == "ProvenByPattern"
    assert rep["certificate"]["transform_numerator"] == "Z1 + Z2 + Z3"
    quad = rep["quadratic"]
    assert quad["inertia"] == [1, 2, 0]
    assert quad["det"] == "1/108"
    assert quad["qstar_one"] == "9"
    assert quad["M"] == [["0", "1/6", "1/6"], ["1/6", "0", "1/6"], ["1/6", "1/6", "0"]]
    est = rep["estimate"]
    assert est["C_full_decimal"] == pytest.approx(math.sqrt(3) / math.pi, rel=1e-13)
    assert est["C_full_sign"] == 1
    assert est["C_exact_square"] == "3"
    assert est["rho"] == ["3/2", "3/2", "3/2"]
    assert est["alpha"] == "-1"
    v = rep["verdict"]
    assert v["status"] == "UltimatelyPositive"
    assert v["conditional"] is False
    names = [c["name"] for c in v["checklist"]]
    assert names == [
        "cone_point_unique",
        "gradient_vanishes",
        "no_smooth_critical_on_torus",
        "lorentzian_signature",
        "qstar_one_positive",
        "minimality_certificate",
        "gamma_finite",
    ]
    assert all(c["passed"] for c in v["checklist"])
    assert rep["error"] is None
    assert rep["skipped"] == {}


def test_analyze_example_two_negative_branch(capsys):
    code, rep = run_json(
        capsys, ["analyze", "--input", EX2, "--beta", "9/10", "--samples", "512"]
    )
    assert code == 0
    assert rep["verdict"]["status"] == "UltimatelyNegative"
    assert rep["verdict"]["conditional"] is True
    assert "conditional" in rep["verdict"]["reason"]
    assert rep["certificate"]["status"] == "NotFalsified"
    assert rep["certificate"]["samples"] == 512
    assert rep["config"]["samples"] == 512
    assert rep["estimate"]["C_full_sign"] == -1
    assert rep["quadratic"]["det"] == "-3/4096"


def test_analyze_degenerate_gamma_inconclusive(capsys):
    code, rep = run_json(capsys, ["analyze", "--input", EX1, "--beta", "1/2"])
    assert code == 3
    assert rep["verdict"]["status"] == "Inconclusive"
    assert "DegenerateGamma" in rep["verdict"]["reason"]
    assert rep["estimate"] is None
    gamma = [c for c in rep["verdict"]["checklist"] if c["name"] == "gamma_finite"]
    assert gamma and gamma[0]["passed"] is False


def test_analyze_constant_polynomial_inapplicable(capsys, tmp_path):
    path = write_input(
        tmp_path, "const.json", {"variables": ["Z1", "Z2", "Z3"], "expression": "5", "beta": 1}
    )
    code, rep = run_json(capsys, ["analyze", "--input", path])
    assert code == 2
    assert rep["error"]["type"] == "MethodInapplicable"
    assert rep["error"]["stage"] == "cone_point"
    assert rep["verdict"] is None
    assert "minimality" in rep["skipped"]


def test_analyze_two_cone_points_on_one_torus(capsys, tmp_path):
    expr = "(1 - 1/3*(Z1+Z2+Z3))^2 * (1 + 1/3*(Z1+Z2+Z3))^2"
    path = write_input(
        tmp_path, "two.json", {"variables": ["Z1", "Z2", "Z3"], "expression": expr, "beta": 1}
    )
    code, rep = run_json(capsys, ["analyze", "--input", path])
    assert code == 2
    assert rep["error"]["stage"] == "cone_point"
    assert "share the minimal torus" in rep["error"]["reason"]


def test_analyze_negative_constant_flips_sign(capsys, tmp_path):
    expr = "-2 + 2*(Z1+Z2+Z3) - 3/2*(Z1*Z2+Z1*Z3+Z2*Z3)"
    path = write_input(
        tmp_path, "neg.json", {"variables": ["Z1", "Z2", "Z3"], "expression": expr, "beta": 1}
    )
    code, rep = run_json(capsys, ["analyze", "--input", path])
    assert code == 0
    assert rep["normalization"]["constant"] == "-2"
    est = rep["estimate"]
    assert est["C_full_decimal"] == pytest.approx(-0.5 * math.sqrt(3) / math.pi, rel=1e-12)
    assert est["C_exact_square"] == "3/4"
    assert rep["verdict"]["status"] == "UltimatelyNegative"


# -- input errors --------------------------------------------------------------

def test_exit4_unreadable_and_malformed(capsys, tmp_path):
    assert cli.main(["analyze", "--input", str(tmp_path / "missing.json")]) == 4
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert cli.main(["analyze", "--input", str(bad)]) == 4
    capsys.readouterr()


@pytest.mark.parametrize(
    "payload",
    [
        {"variables": ["Z1"], "beta": 1},
        {"variables": ["Z1"], "expression": "1 - Z1", "terms": [], "beta": 1},
        {"variables": ["Z1", "Z1"], "expression": "1 - Z1", "beta": 1},
        {"variables": ["Z1"], "expression": "1 -", "beta": 1},
        {"variables": ["Z1"], "terms": [{"coeff": "1/0", "exps": [0]}], "beta": 1},
        {"variables": ["Z1"], "terms": [{"coeff": 1, "exps": [0, 1]}], "beta": 1},
        {"variables": ["Z1"], "terms": [{"coeff": 1}], "beta": 1},
        {"variables": ["Z1"], "expression": "1 - Z1", "beta": "one"},
        {"variables": ["Z1", "Z2", "Z3"], "expression": "Z1 + Z2 + Z3", "beta": 1},
    ],
)
def test_exit4_bad_payloads(capsys, tmp_path, payload):
    path = write_input(tmp_path, "p.json", payload)
    assert cli.main(["analyze", "--input", path]) == 4
    assert "error:" in capsys.readouterr().err


def test_exit4_flag_values(capsys):
    assert cli.main(["analyze", "--input", EX1, "--beta", "0"]) == 4
    assert cli.main(["analyze", "--input", EX1, "--beta", "-2"]) == 4
    assert cli.main(["validate", "--input", EX1, "--orders", "4,x"]) == 4
    assert cli.main(["validate", "--input", EX1, "--orders=-3,4"]) == 4
    assert cli.main(["analyze", "--input", EX1, "--samples", "0"]) == 4
    assert cli.main(["scan", "--input", EX1, "--scan-depth", "-1"]) == 4
    capsys.readouterr()


def test_exit4_missing_beta(capsys, tmp_path):
    path = write_input(
        tmp_path, "nb.json", {"variables": ["Z1", "Z2", "Z3"], "expression": "1 - Z1*Z2*Z3"}
    )
    assert cli.main(["analyze", "--input", path]) == 4
    assert "beta is required" in capsys.readouterr().err


def test_exit4_negative_constant_fractional_beta(capsys, tmp_path):
    path = write_input(
        tmp_path, "negc.json", {"variables": ["Z1"], "expression": "-1 + Z1", "beta": "1/2"}
    )
    assert cli.main(["scan", "--input", path]) == 4
    assert "integer beta" in capsys.readouterr().err


def test_argparse_failures_exit4(capsys):
    for argv in (
        ["explode", "--input", EX1],
        ["analyze"],
        ["analyze", "--input", EX1, "--backend", "turbo"],
        [],
    ):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 4
    capsys.readouterr()


# -- config handling ---------------------------------------------------------------

def test_beta_flag_overrides_file(capsys, tmp_path):
    base = json.loads(Path(EX1).read_text(encoding="utf-8"))
    base["beta"] = "1/2"
    path = write_input(tmp_path, "half.json", base)
    code, rep = run_json(capsys, ["analyze", "--input", path])
    assert code == 3
    code, rep = run_json(capsys, ["analyze", "--input", path, "--beta", "1"])
    assert code == 0
    assert rep["input"]["beta"] == "1"


def test_terms_input_matches_expression_input(capsys, tmp_path):
    terms = [{"coeff": 1, "exps": [0, 0, 0]}]
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        terms.append({"coeff": -1, "exps": list(e)})
    for i, j in ((0, 1), (0, 2), (1, 2)):
        e = [0, 0, 0]
        e[i] = e[j] = 1
        terms.append({"coeff": "3/4", "exps": list(e)})
    path = write_input(
        tmp_path, "terms.json", {"variables": ["Z1", "Z2", "Z3"], "terms": terms, "beta": "1"}
    )
    code, rep = run_json(capsys, ["analyze", "--input", path])
    assert code == 0
    assert (
        rep["input"]["polynomial"]
        == "1 - Z1 - Z2 - Z3 + 3/4*Z1*Z2 + 3/4*Z1*Z3 + 3/4*Z2*Z3"
    )
    assert rep["verdict"]["status"] == "UltimatelyPositive"


def test_reports_are_deterministic(capsys):
    argv = ["analyze", "--input", EX1, "--seed", "7"]
    _, rep1 = run_json(capsys, argv)
    _, rep2 = run_json(capsys, argv)
    rep1.pop("timings")
    rep2.pop("timings")
    assert rep1 == rep2


def test_out_file_matches_stdout(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, rep = run_json(capsys, ["analyze", "--input", EX1, "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text(encoding="utf-8")) == rep


def test_tsv_format(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code = cli.main(
        ["analyze", "--input", EX1, "--format", "tsv", "--out", str(out)]
    )
    text = capsys.readouterr().out
    assert code == 0
    assert text.startswith("key\tvalue\n")
    assert "status\tUltimatelyPositive" in text
    assert "certificate\tProvenByPattern" in text
    assert (tmp_path / "rep.json.tsv").read_text(encoding="utf-8") == text
    json.loads(out.read_text(encoding="utf-8"))


# -- validate -----------------------------------------------------------------------

def test_validate_small_orders(capsys):
    code, rep = run_json(
        capsys, ["validate", "--input", EX1, "--orders", "8,4"]
    )
    assert code == 0
    table = rep["validation"]
    assert [row["n"] for row in table["rows"]] == [4, 8]
    assert table["backend"] == "exact"
    for row in table["rows"]:
        assert 0.8 < row["ratio"] < 1.2
    assert isinstance(table["tail_monotone"], bool)
    assert "validation" in rep["timings"]
    assert "seconds" not in table


def test_validate_ratio_improves(capsys):
    code, rep = run_json(
        capsys, ["validate", "--input", EX1, "--orders", "6,18"]
    )
    assert code == 0
    rows = rep["validation"]["rows"]
    assert abs(rows[1]["ratio"] - 1) < abs(rows[0]["ratio"] - 1)
    assert rep["validation"]["tail_monotone"] is True


def test_validate_without_estimate_is_skipped(capsys):
    code, rep = run_json(capsys, ["validate", "--input", EX1, "--beta", "1/2"])
    assert code == 3
    assert rep["validation"] is None
    assert "validation" in rep["skipped"]


def test_validate_tsv(capsys):
    code = cli.main(["validate", "--input", EX1, "--orders", "4", "--format", "tsv"])
    text = capsys.readouterr().out
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n\tempirical\tpredicted\tratio"
    assert lines[1].startswith("4\t")


# -- scan ------------------------------------------------------------------------------

def test_scan_clean_positive_run(capsys):
    code, rep = run_json(capsys, ["scan", "--input", EX1, "--scan-depth", "12"])
    assert code == 0
    scan = rep["scan"]
    assert scan["depth"] == 12
    assert scan["prefactor_sign"] == 1
    assert scan["first_nonpositive"] is None
    assert scan["signs"] == ["+"] * 13
    assert "verdict" not in rep


def test_scan_finds_sign_change(capsys):
    code, rep = run_json(
        capsys, ["scan", "--input", EX1, "--beta", "2/5", "--scan-depth", "10"]
    )
    assert code == 0
    scan = rep["scan"]
    assert scan["first_nonpositive"] == 3
    assert scan["signs"][3] == "-"
    assert scan["signs"][: 3] == ["+", "+", "+"]


def test_scan_prefactor_sign_flip(capsys, tmp_path):
    path = write_input(
        tmp_path, "flip.json", {"variables": ["Z1"], "expression": "-1 + Z1", "beta": 1}
    )
    code, rep = run_json(capsys, ["scan", "--input", path, "--scan-depth", "6"])
    assert code == 0
    scan = rep["scan"]
    assert scan["prefactor_sign"] == -1
    assert scan["first_nonpositive"] == 0
    assert scan["signs"] == ["-"] * 7


def test_scan_tsv(capsys):
    code = cli.main(
        ["scan", "--input", EX1, "--beta", "2/5", "--scan-depth", "5", "--format", "tsv"]
    )
    text = capsys.readouterr().out
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "n\tsign"
    assert lines[1] == "0\t+"
    assert lines[-1] == "first_nonpositive\t3"


# -- module entry point ------------------------------------------------------------------

def test_module_invocation_subprocess():
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "conediag.cli",
            "scan",
            "--input",
            EX1,
            "--scan-depth",
            "6",
        ],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["scan"]["first_nonpositive"] is None
