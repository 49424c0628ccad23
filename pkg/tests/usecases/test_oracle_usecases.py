import pytest

from exceptions import BudgetExceeded
from schemas.enums import OracleKindEnum
from usecases.oracle_usecases import free_presentation, run_oracle_usecase


def test_free_presentation_names():
    assert free_presentation(2, 3).names == ["x", "y"]
    assert free_presentation(7, 1).names[6] == "g6"


@pytest.mark.asyncio
async def test_filtration_oracle_agrees(z2):
    report = await run_oracle_usecase(OracleKindEnum.filtration, 2, 2, z2, 0, 1000)
    assert report.command == "oracle filtration"
    assert report.passed
    assert report.tables["oracle_dims"] == report.tables["engine_dims"] == [7, 1, 0]


@pytest.mark.asyncio
async def test_orthogonality_oracle(z2_z4):
    report = await run_oracle_usecase(OracleKindEnum.orthogonality, 2, 2, z2_z4, 0, 1000)
    assert report.passed
    assert report.inputs == {"group": "Z2xZ4"}
    assert report.tables["sums"] == 64


@pytest.mark.asyncio
async def test_assoc_oracle(z3):
    report = await run_oracle_usecase(OracleKindEnum.assoc, 2, 2, z3, 5, 1000)
    assert report.passed
    assert report.tables == {"entries": 9, "mismatches": 0}


@pytest.mark.asyncio
async def test_oracle_fail_budget(z2):
    with pytest.raises(BudgetExceeded):
        await run_oracle_usecase(OracleKindEnum.filtration, 3, 3, z2, 0, 20)
