import csv
import json
import subprocess
import sys

import pytest

from pseudonull import parse
from pseudonull.cli import main
from pseudonull.golden import CORPUS, HIERARCHY


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hierarchy_check_passes(capsys):
    code, out, _ = run(capsys, "hierarchy", "--levels", "5", "--check")
    assert code == 0
    assert out.rstrip().endswith("check: pass")
    assert "V_4 = (t2 + 3*t*t1 + t^3)N = k3 xi" in out


def test_hierarchy_single_level(capsys):
    code, out, _ = run(capsys, "hierarchy", "--levels", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"field": "1;0;0", "k_flow": "k1", "n": 0, "tau_flow": "t1"}]


@pytest.mark.parametrize("levels", ["0", "-2"])
def test_hierarchy_rejects_nonpositive_levels(capsys, levels):
    code, _, err = run(capsys, "hierarchy", "--levels", levels)
    assert code == 2 and "levels" in err


def test_hierarchy_check_beyond_transcription_is_usage_error(capsys):
    code, _, _ = run(capsys, "hierarchy", "--levels", "6", "--check")
    assert code == 2


def test_hierarchy_check_detects_tampering(capsys, monkeypatch):
    import pseudonull.golden as golden

    tampered = tuple(dict(row) for row in HIERARCHY)
    tampered[2]["tau_flow"] = "t3 + 3*t*t2 + 3*t1^2 + 3*t^2*t1"
    monkeypatch.setattr(golden, "HIERARCHY", tampered)
    code, out, _ = run(capsys, "hierarchy", "--check", "--format", "json")
    report = json.loads(out)
    assert code == 1 and report["check"] == "fail"
    assert report["mismatches"][0]["n"] == 2


def test_hierarchy_with_rational_curvature(capsys):
    code, out, _ = run(capsys, "hierarchy", "--levels", "3", "--curvature=-1/2", "--check", "--format", "json")
    rows = json.loads(out)["levels"]
    assert code == 0
    assert rows[1]["k_flow"] == "k2 - 1/2*k"


def test_hierarchy_csv(capsys, tmp_path):
    path = tmp_path / "h.csv"
    code, _, _ = run(capsys, "hierarchy", "--levels", "2", "--format", "csv", "--out", str(path))
    rows = list(csv.reader(path.open()))
    assert code == 0 and rows[0] == ["n", "field", "tau_flow", "k_flow"] and rows[2][2] == "t2 + 2*t*t1"


def test_hierarchy_json_is_byte_identical(capsys):
    first = run(capsys, "hierarchy", "--format", "json")[1]
    second = run(capsys, "hierarchy", "--format", "json")[1]
    assert first == second


@pytest.mark.parametrize(
    "candidate, code, residual",
    [
        ("t1", 0, "0"),
        ("t^2", 1, "-2*t1^2 - 2*t^2*t1"),
        (HIERARCHY[3]["tau_flow"], 0, "0"),
    ],
)
def test_symmetry(capsys, candidate, code, residual):
    rc, out, _ = run(capsys, "symmetry", "--flow", "t2+2*t*t1", "--candidate", candidate, "--format", "json")
    data = json.loads(out)
    assert rc == code and data["residual"] == residual


def test_parse_errors_show_position(capsys):
    code, _, err = run(capsys, "symmetry", "--flow", "t1 -", "--candidate", "t")
    assert code == 2
    assert "offset 4" in err and "    ^" in err


def test_bracket_of_hierarchy_fields(capsys):
    code, out, _ = run(capsys, "bracket", "--field", "0;1;0", "--field", "0;t;0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["bracket"] == {"f": "0", "g": "0", "h": "0"} and data["status"] == "pass"


def test_bracket_needs_two_fields(capsys):
    assert run(capsys, "bracket", "--field", "0;1;0")[0] == 2
    assert run(capsys, "bracket", "--field", "0;1;0", "--field", "0;0;1")[0] == 2
    assert run(capsys, "bracket", "--field", "0;1", "--field", "0;1;0")[0] == 2


def test_variation_report(capsys):
    code, out, _ = run(capsys, "variation", "--field", "0;1;0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["coefficients"]["alpha"] == "G + t1 + t^2"
    assert data["torsion_variation"] == "t2 + 2*t*t1"
    assert data["frame_matrix"][2] == ["t", "0", "-G - t1 - t^2"]


def test_variation_of_non_tangent_field(capsys):
    code, out, _ = run(capsys, "variation", "--field", "t;0;0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["tangent"] is False and "torsion_variation" not in data


def test_parse_command(capsys):
    code, out, _ = run(capsys, "parse", "t*t + G", "k2+G*k")
    assert code == 0 and out == "G + t^2\nk2 + G*k\n"
    assert run(capsys, "parse", "t + x")[0] == 2


def test_corpus_round_trips_through_the_cli():
    # two passes through a real process: canonical output must be a fixed point
    cmd = [sys.executable, "-m", "pseudonull", "parse", "--format", "json", "--", *CORPUS]
    first = json.loads(subprocess.run(cmd, capture_output=True, text=True, check=True).stdout)
    canon = [row["canonical"] for row in first]
    again = subprocess.run(
        [sys.executable, "-m", "pseudonull", "parse", "--", *canon], capture_output=True, text=True, check=True
    ).stdout.splitlines()
    assert again == canon
    assert all(parse(c) == parse(text) for c, text in zip(canon, CORPUS))


def test_simulate_burgers_writes_snapshots(capsys, tmp_path):
    code, _, _ = run(capsys, "simulate", "burgers", "--tau0", "sin", "--grid-n", "256", "--t-end", "0.5",
                     "--out", str(tmp_path))
    assert code == 0
    snaps = sorted(tmp_path.glob("tau_*.csv"))
    assert len(snaps) == 6
    assert snaps[0].read_text().startswith("s,value\n")
    run_json = json.loads((tmp_path / "run.json").read_text())
    assert set(run_json) == {"dt", "ds", "times", "fields"}
    assert run_json["times"][-1] == pytest.approx(0.5)


def test_simulate_heat_cross_checks_hopf_cole(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "heat", "--curvature", "1", "--k0", "2+cos", "--grid-n", "128",
                       "--t-end", "0.2", "--out", str(tmp_path), "--format", "json")
    summary = json.loads(out)
    assert code == 0 and len(list(tmp_path.glob("k_*.csv"))) == 6
    assert max(summary["hopf_cole"]["max_error"]) < 1e-5
    assert (tmp_path / "hopf_cole_check.json").exists()


def test_simulate_filament(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "filament", "--tau0", "sin", "--grid-n", "64", "--t-end", "0.1",
                       "--out", str(tmp_path), "--format", "json")
    assert code == 0
    header = (tmp_path / "curve_0000.csv").read_text().splitlines()[0]
    assert header == "s,gamma0,gamma1,gamma2,T0,T1,T2,N0,N1,N2,B0,B1,B2"
    consistency = json.loads((tmp_path / "consistency.json").read_text())
    assert consistency["anchor_gram_drift"] < 1e-12
    errors = sorted((float(lag), err) for lag, err in consistency["difference_quotient_error"].items())
    # first order in the lag
    (short, e_short), (long, e_long) = errors
    assert 0.5 < (e_long / e_short) / (long / short) < 2


def test_simulate_gauge(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "gauge", "--grid-n", "64", "--t-end", "0.1", "--out", str(tmp_path),
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["heat"]["relative_error"] < 1e-12 and data["burgers"]["b"] == 4


def test_simulate_reports_instability_before_writing(capsys, tmp_path):
    target = tmp_path / "never"
    code, _, err = run(capsys, "simulate", "burgers", "--dt", "0.01", "--out", str(target))
    assert code == 2 and "stability" in err and not target.exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "burgers", "--grid-n", "0"],
        ["simulate", "heat", "--curvature", "G"],
        ["simulate", "burgers", "--tau0", "os.system"],
        ["simulate", "filament", "--dt", "1e-4", "--t-end", "0.00015"],
        ["verify", "--filter", "everything"],
        [],
    ],
)
def test_usage_errors(capsys, tmp_path, argv):
    if argv[:1] == ["simulate"]:
        argv = argv + ["--out", str(tmp_path / "x")]
    try:
        code = main(argv)
    except SystemExit as exc:  # rejected by argparse itself
        code = exc.code
    assert code == 2
    assert not (tmp_path / "x").exists()


def test_verify_symbolic_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "symbolic", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["status"] == "pass"
    assert "hopf_cole_consistency" not in report["checks"]
    assert list(report["checks"]) == sorted(report["checks"])


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "--filter", "symbolic", "--format", "json")[1]
    b = run(capsys, "verify", "--filter", "symbolic", "--format", "json", "--workers", "3")[1]
    assert a == b
