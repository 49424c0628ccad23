import json

import pytest

from core.constants import REPORT_VERSION
from exceptions import DataValidationException
from resource_access.repositories.report_repos import ReportRepository
from schemas.report_schemas import CheckResult, Report


@pytest.fixture(scope="function")
def report():
    return Report(
        command="fm",
        inputs={"group": "Z2"},
        checks=[CheckResult.of("orthogonality", True), CheckResult.skipped("module", "no algebra generators given")],
    )


@pytest.mark.asyncio
async def test_save_report_stdout(report, capsys):
    await ReportRepository().save_report(report)
    output = json.loads(capsys.readouterr().out)
    assert output["version"] == REPORT_VERSION
    assert [check["status"] for check in output["checks"]] == ["passed", "skipped"]
    assert output["checks"][1]["witness"] == "no algebra generators given"


@pytest.mark.asyncio
async def test_save_report_file(report, tmp_path):
    path = tmp_path / "report.json"
    await ReportRepository(str(path)).save_report(report)
    text = path.read_text()
    assert text == report.to_json()
    assert text.endswith("\n")


@pytest.mark.asyncio
async def test_save_report_fail_unwritable(report, tmp_path):
    with pytest.raises(DataValidationException):
        await ReportRepository(str(tmp_path / "missing" / "report.json")).save_report(report)


def test_report_passed_ignores_skipped(report):
    assert report.passed
    report.checks.append(CheckResult.of("poincare_inverse", False, "entry ((0,), (1,))"))
    assert not report.passed
    assert report.check("poincare_inverse").witness == "entry ((0,), (1,))"
    with pytest.raises(KeyError):
        report.check("exchange")
