import io
import json

import pytest

from pqsurf.checks import DATA_DIR, CaseChecks, run_case_checks
from pqsurf.cli import main
from pqsurf.errors import ValidationError
from pqsurf.params import ExitCode
from pqsurf.pqsurf import Config, PQSurf, Report

TWISTED_JOB = DATA_DIR / "jobs" / "D7_twisted.json"


@pytest.fixture
def app():
    return PQSurf(Config())


def test_surface_command_writes_report(tmp_path):
    out = tmp_path / "surface.json"
    assert main(["surface", str(TWISTED_JOB), "--out", str(out)]) == ExitCode.OK
    report = Report.from_json(out.read_text(encoding="utf-8"))
    assert report.name == "D7_twisted"
    assert report["surface"]["KX2"] == 95
    assert report["surface"]["k"] == "11/7"
    assert report["surface"]["basket"] == "{36 x A1, 1 x 1/7(1,2), 1 x 1/7(1,3)}"


def test_cover_command_prints_sorted_json(capsys):
    assert main(["cover", str(TWISTED_JOB)]) == ExitCode.OK
    text = capsys.readouterr().out
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["schema"] == 1
    row = data["results"]["covers"][0]
    assert (row["signature"], row["genus"]) == ([2, 2, 2, 2, 2, 2, 7], 14)


def test_bad_job_exits_with_validation_code(tmp_path):
    job = tmp_path / "bad.json"
    job.write_text(json.dumps({"schema": 2, "group": {"kind": "psl2", "q": 13}}), encoding="utf-8")
    assert main(["group", str(job)]) == ExitCode.VALIDATION
    job.write_text("{not json", encoding="utf-8")
    assert main(["group", str(job)]) == ExitCode.VALIDATION


def test_order_cap_exits_with_resource_code():
    assert main(["group", str(TWISTED_JOB), "--order-cap", "5"]) == ExitCode.RESOURCE


def test_invalid_system_is_rejected(tmp_path):
    job = json.loads(TWISTED_JOB.read_text(encoding="utf-8"))
    job["systems"][0] = job["systems"][0][:-1]
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job), encoding="utf-8")
    assert main(["surface", str(path)]) == ExitCode.VALIDATION


def test_verify_command_single_case(tmp_path, capsys):
    assert main(["verify-paper", "--case", "D7_twisted", "--out", str(tmp_path)]) == ExitCode.OK
    assert (tmp_path / "D7_twisted.json").exists()
    printed = capsys.readouterr().out
    assert "FAIL" not in printed
    assert "1 of 1 cases passed" in printed


def test_report_round_trip(app):
    report = app.run(app.load_job(TWISTED_JOB), ("covers", "basket"))
    assert Report.from_json(report.to_json()) == report
    assert "basket" in report and "surface" not in report
    with pytest.raises(ValidationError):
        Report.from_json('{"schema": 7}')
    with pytest.raises(ValidationError):
        app.run(app.load_job(TWISTED_JOB), ("nonsense",))


def test_reports_are_deterministic():
    first = PQSurf(Config(threads=1))
    second = PQSurf(Config(threads=3))
    a = first.run(first.load_job(TWISTED_JOB), ("basket", "surface"))
    b = second.run(second.load_job(TWISTED_JOB), ("basket", "surface"))
    assert a.to_json() == b.to_json()


def test_case_checks_flag_mismatches():
    report = Report("fake", sections={"surface": {"KX2": 95, "pg": 17}, "twists": {"baskets": ["x", "y"]}})
    expect = {"surface": {"KX2": 95, "pg": 16}, "twists": {"baskets": {"includes": ["y"]}}, "pi1": {"status": "v"}}
    results = CaseChecks.compare(report, expect)
    assert [passed for _, passed in results] == [True, False, True, False]

    stream = io.StringIO()
    assert CaseChecks.verify_reports([report], [{"case": "fake", "expect": expect}], stream) == [False]
    assert "| FAIL ✘" in stream.getvalue()
    with pytest.raises(ValidationError):
        CaseChecks.verify_reports([report], [], stream)


def test_case_checks_rows():
    report = Report("rows", sections={"pi1": [{"status": "verified"}, {"status": "inconclusive"}]})
    assert CaseChecks.compare(report, {"pi1": {"status": "verified"}}) == [('pi1.status = "verified"', False)]


def test_run_case_checks_summary(app):
    stream = io.StringIO()
    reports, results = run_case_checks(app, ("D7_twisted",), stream=stream)
    assert results == [True]
    assert reports[0].name == "D7_twisted"
    assert "SUMMARY" in stream.getvalue()


def test_unknown_case_is_rejected():
    with pytest.raises(ValidationError):
        CaseChecks.load_cases(("E8",))


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("PQSURF_THREADS", "3")
    monkeypatch.setenv("PQSURF_COSET_CAP", "1000")
    config = Config.from_env()
    assert (config.threads, config.coset_cap) == (3, 1000)
    assert config.bounds.coset_cap == 1000
    monkeypatch.setenv("PQSURF_THREADS", "many")
    with pytest.raises(ValidationError):
        Config.from_env()


def test_config_precedence(app):
    job = app.load_job({**json.loads(TWISTED_JOB.read_text(encoding="utf-8")), "options": {"threads": 2}})
    assert app.effective_config(job).threads == 2
    cli = PQSurf(Config(), {"threads": 4, "coset_cap": None})
    assert cli.effective_config(job).threads == 4
    assert cli.config.coset_cap == Config().coset_cap
    with pytest.raises(ValidationError):
        Config().updated({"threads": 0})


def test_job_order_cap_applies_without_cli_override(tmp_path, monkeypatch):
    monkeypatch.delenv("PQSURF_ORDER_CAP", raising=False)
    job = json.loads(TWISTED_JOB.read_text(encoding="utf-8"))
    job["options"] = {"order_cap": 5}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job), encoding="utf-8")
    assert main(["group", str(path)]) == ExitCode.RESOURCE
    assert main(["group", str(path), "--order-cap", "100"]) == ExitCode.OK
    monkeypatch.setenv("PQSURF_ORDER_CAP", "100")
    assert main(["group", str(path)]) == ExitCode.RESOURCE


@pytest.mark.slow
def test_pi1_stage_covers_every_local_system(app):
    job = app.load_job(DATA_DIR / "jobs" / "A4.json")
    assert job.pi1_local_systems
    rows = app.pi1_report(job)
    assert len(rows) > 1
    assert {row["status"] for row in rows} == {"verified"}


@pytest.mark.slow
def test_enumeration_stage_counts_every_class_choice(app):
    job = app.load_job(DATA_DIR / "jobs" / "D7.json")
    result = app.enumeration_report(job)
    assert (result["count"], result["orbit_count"]) == (6, 3)
