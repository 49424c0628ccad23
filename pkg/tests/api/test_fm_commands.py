import json

from core.constants import EXIT_OK, EXIT_USAGE_ERROR
from main import main
from schemas.enums import FmCheckEnum
from schemas.report_schemas import Report


def test_fm_command_arguments(mocker):
    usecase = mocker.patch("api.fm.fm_commands.fm_usecase", return_value=Report(command="fm"))

    assert main(["fm", "--group", "Z4xZ2", "--check", "exchange", "--samples", "3", "--seed", "9"]) == EXIT_OK
    group, generators, check, samples, seed, _, _ = usecase.call_args.args
    assert group.moduli == (4, 2)
    assert generators is None
    assert check == FmCheckEnum.exchange
    assert (samples, seed) == (3, 9)


def test_fm_command_algebra_spec(mocker):
    usecase = mocker.patch("api.fm.fm_commands.fm_usecase", return_value=Report(command="fm"))

    assert main(["fm", "--group", "Z4", "--algebra", "shift=(1);twist=(2)"]) == EXIT_OK
    generators = usecase.call_args.args[1]
    assert len(generators) == 2


def test_fm_command_real_run(capsys):
    assert main(["fm", "--group", "Z2", "--check", "inversion", "--samples", "1"]) == EXIT_OK
    output = json.loads(capsys.readouterr().out)
    assert output["inputs"]["group"] == "Z2"
    assert all(check["status"] == "passed" for check in output["checks"])


def test_fm_command_fail_zero_modulus(capsys):
    assert main(["fm", "--group", "Z0"]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "ZeroModulusError"


def test_fm_command_fail_malformed_group(capsys):
    assert main(["fm", "--group", "Q8"]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "ParseError"
