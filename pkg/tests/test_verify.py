import json

import pytest

import pseudonull.geometry
from pseudonull import verify
from pseudonull.reporting import Check, dumps
from pseudonull.verify import NUMERIC, SYMBOLIC, VerifyConfig, registered_checks, run_verify_all


@pytest.fixture(scope="module")
def full_report():
    return run_verify_all()


def test_everything_passes(full_report):
    failing = [c.name for c in full_report.checks if not c.passed]
    assert failing == []


def test_groups_partition_the_registry():
    sym, num = set(registered_checks(SYMBOLIC)), set(registered_checks(NUMERIC))
    assert sym and num and not sym & num
    assert sym | num == set(registered_checks())


def test_filter_selects_group():
    names = list(run_verify_all(SYMBOLIC).to_json()["checks"])
    assert names == registered_checks(SYMBOLIC)
    with pytest.raises(ValueError):
        run_verify_all("fast")


def test_report_is_sorted_and_well_formed(full_report):
    data = full_report.to_json()
    assert list(data["checks"]) == sorted(data["checks"])
    for entry in data["checks"].values():
        assert set(entry) == {"status", "residual", "details"}
        assert entry["status"] in ("pass", "fail")


def test_workers_do_not_change_output():
    one = dumps(run_verify_all(SYMBOLIC, VerifyConfig(workers=1)).to_json())
    four = dumps(run_verify_all(SYMBOLIC, VerifyConfig(workers=4)).to_json())
    assert one == four


def test_seed_changes_random_samples_not_verdict():
    report = run_verify_all(SYMBOLIC, VerifyConfig(seed=7))
    assert report.passed


def test_sign_flip_is_caught(monkeypatch):
    original = pseudonull.geometry.torsion_variation
    monkeypatch.setattr(pseudonull.geometry, "torsion_variation", lambda V: -original(V))
    checks = run_verify_all(SYMBOLIC).to_json()["checks"]
    assert checks["operator_flow_agreement"]["status"] == "fail"
    assert checks["bracket_homomorphism"]["status"] == "fail"
    # reported residual is the offending polynomial, not just a flag
    assert checks["operator_flow_agreement"]["residual"] not in (None, "0")


def test_crashing_check_is_reported(monkeypatch):
    def boom(cfg):
        raise RuntimeError("kaboom")

    monkeypatch.setitem(verify._REGISTRY, "zz_crash", (SYMBOLIC, boom))
    report = run_verify_all(SYMBOLIC)
    entry = report.to_json()["checks"]["zz_crash"]
    assert not report.passed
    assert entry["status"] == "fail" and "kaboom" in entry["residual"]


def test_table_summarises(full_report):
    lines = full_report.table().splitlines()
    assert lines[-1] == "overall: PASS"
    assert len(lines) == len(registered_checks()) + 1


def test_json_survives_round_trip(full_report):
    text = dumps(full_report.to_json())
    assert json.loads(text)["status"] == "pass"
    assert "NaN" not in text


def test_check_serialisation():
    c = Check("x", True, 1.5e-12, {"ratio": 16.0})
    assert c.to_json() == {"status": "pass", "residual": 1.5e-12, "details": {"ratio": 16.0}}


def test_filament_quotients_are_first_order():
    coarse, fine = verify.filament_quotient_errors()
    assert coarse < 1e-2
    assert 8 <= coarse / fine <= 12


def test_gauge_residuals_decrease_at_second_order():
    r = verify.burgers_gauge_residuals(counts=(32, 64, 128))
    assert r[0] > r[1] > r[2]
    assert r[1] / r[2] > 3.4
