import json

import pytest

from core.constants import EXIT_CHECK_FAILURE, EXIT_OK, EXIT_USAGE_ERROR
from engines.ncpoly_engines import NcPoly
from main import main
from schemas.report_schemas import Report
from tests.fixtures.presentation_fixtures import WEYL_TEXT


def test_grn_command_arguments(write_input, mocker):
    usecase = mocker.patch("api.microloc.microloc_commands.grn_usecase", return_value=Report(command="microloc grn"))
    path = write_input("weyl.pres", WEYL_TEXT)

    assert main(["microloc", "grn", "--pres", path, "--n", "2", "--localize", "f=d", "--order", "3"]) == EXIT_OK
    pres, n = usecase.call_args.args
    assert pres.name == "Weyl"
    assert n == 2
    assert usecase.call_args.kwargs["localize"] == NcPoly.generator(1)
    assert usecase.call_args.kwargs["lift"] is None
    assert usecase.call_args.kwargs["order"] == 3


def test_grn_command_bare_localizing_poly(write_input, mocker):
    usecase = mocker.patch("api.microloc.microloc_commands.grn_usecase", return_value=Report(command="microloc grn"))
    path = write_input("weyl.pres", WEYL_TEXT)

    assert main(["microloc", "grn", "--pres", path, "--localize", "d", "--lift", "d + x"]) == EXIT_OK
    assert usecase.call_args.kwargs["localize"] == NcPoly.generator(1)
    assert usecase.call_args.kwargs["lift"] == NcPoly.generator(1) + NcPoly.generator(0)


def test_grn_command_fail_zero_symbol(write_input, capsys):
    path = write_input("weyl.pres", WEYL_TEXT)

    assert main(["microloc", "grn", "--pres", path, "--localize", "x"]) == EXIT_CHECK_FAILURE
    assert "ZeroSymbolError" in capsys.readouterr().err


def test_grn_command_fail_unknown_generator(write_input):
    path = write_input("weyl.pres", WEYL_TEXT)

    assert main(["microloc", "grn", "--pres", path, "--localize", "q"]) == EXIT_USAGE_ERROR


@pytest.mark.slow
def test_grn_command_lift_independent(write_input, capsys):
    path = write_input("weyl.pres", WEYL_TEXT.replace("bound 2", "bound 3"))

    main(["microloc", "grn", "--pres", path, "--n", "1", "--localize", "f=d", "--lift", "d + x"])
    output = json.loads(capsys.readouterr().out)
    check = next(check for check in output["checks"] if check["name"] == "lift_independent")
    assert check["status"] == "passed"
    assert output["tables"]["lift_comparison"]["failures"] == 0
    assert output["inputs"]["lift"] == "d + x"
