import json

import pytest

from core.constants import EXIT_OK, EXIT_USAGE_ERROR
from main import main
from schemas.enums import OracleKindEnum
from schemas.report_schemas import Report


def test_oracle_command_arguments(mocker):
    usecase = mocker.patch("api.oracle.oracle_commands.run_oracle_usecase", return_value=Report(command="oracle"))

    assert main(["oracle", "--kind", "assoc", "--group", "Z3", "--seed", "4"]) == EXIT_OK
    kind, generators, bound, group, seed, budget = usecase.call_args.args
    assert kind == OracleKindEnum.assoc
    assert group.moduli == (3,)
    assert seed == 4


def test_oracle_command_filtration_real_run(capsys):
    assert main(["oracle", "--kind", "filtration", "--gens", "2", "--bound", "2"]) == EXIT_OK
    output = json.loads(capsys.readouterr().out)
    assert output["tables"]["oracle_dims"] == [7, 1, 0]


def test_oracle_command_fail_missing_group(capsys):
    assert main(["oracle", "--kind", "orthogonality"]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "IncorrectDataError"


def test_oracle_command_fail_budget(monkeypatch, capsys):
    monkeypatch.setattr("api.oracle.oracle_commands.settings.budget", 10)

    assert main(["oracle", "--kind", "filtration", "--bound", "3"]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "BudgetExceededError"


def test_oracle_command_fail_unknown_kind():
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--kind", "spectral"])
    assert exc.value.code == EXIT_USAGE_ERROR
