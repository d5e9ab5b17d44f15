import csv
import io
import json

import pytest

from sphtriple.verify import CSV_HEADER, ConstantRow, Entry, RunConfig, VerificationReport, run_verification


@pytest.fixture(scope="module")
def exact_report():
    return run_verification("exact", RunConfig(deterministic=True))


def test_exact_suite_passes(exact_report):
    assert exact_report.passed
    assert exact_report.failures() == []
    kinds = {e.kind for e in exact_report.suite}
    assert kinds <= {"exact", "tolerance"}


def test_json_round_trip(exact_report):
    text = exact_report.to_json()
    again = VerificationReport.from_json(text)
    assert again == exact_report
    assert again.to_json() == text


def test_json_schema(exact_report):
    d = json.loads(exact_report.to_json())
    assert set(d) == {"suite", "constants", "env"}
    entry = d["suite"][0]
    assert {"name", "kind", "expected", "observed", "pass"} <= set(entry)
    assert d["env"]["seed"] == 42
    assert "wall_ms" not in d["env"]


def test_deterministic_reports_are_byte_identical():
    cfg = RunConfig(samples=2000, deterministic=True)
    a = run_verification("mc", cfg).to_json()
    b = run_verification("mc", cfg).to_json()
    assert a == b


def test_wall_time_recorded_when_not_deterministic():
    rep = run_verification("exact", RunConfig())
    assert "wall_ms" in rep.env and "versions" in rep.env


def test_csv_header(exact_report):
    rows = list(csv.reader(io.StringIO(exact_report.to_csv())))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == len(exact_report.suite) + 1


def test_text_render(exact_report):
    text = exact_report.to_text()
    assert "[PASS]" in text and "0 failures" in text


def test_audit_entries_do_not_fail():
    rep = VerificationReport(
        [Entry("a", "constant-audit", 1.0, 2.0, False), Entry("b", "tolerance", 1.0, 1.0, True)],
        [ConstantRow("t", 1, 2.0, 0.0)],
        {},
    )
    assert rep.passed
    rep.suite.append(Entry("c", "mc-sigma", 1.0, 5.0, False, 0.1))
    assert not rep.passed and [e.name for e in rep.failures()] == ["c"]


def test_audit_suite_reports_constants():
    rep = run_verification("audit", RunConfig(samples=5000, deterministic=True))
    theorems = {(c.theorem, c.dim) for c in rep.constants}
    assert ("distance triple", 1) in theorems and ("inner-product triple", 3) in theorems
    assert any(e.kind == "constant-audit" for e in rep.suite)


@pytest.mark.parametrize(
    "kw",
    [{"rel_tol": 0.0}, {"rel_tol": 0.1}, {"samples": 999}, {"max_terms": 0}, {"output_format": "xml"}],
)
def test_run_config_invariants(kw):
    with pytest.raises(ValueError):
        RunConfig(**kw)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verification("nope")
