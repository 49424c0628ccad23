import json

from core.constants import EXIT_OK, EXIT_USAGE_ERROR
from main import main
from schemas.report_schemas import CheckResult, Report


def _report(command: str) -> Report:
    return Report(command=command, checks=[CheckResult.of("lift_exists", True)])


def test_lift_command_success(write_input, mocker, standard_diagram_data, diagram_label):
    usecase = mocker.patch("api.etale.etale_commands.lift_diagram_usecase", return_value=_report("etale lift"))
    path = write_input("diagram.json", standard_diagram_data)

    assert main(["etale", "lift", "--diagram", path]) == EXIT_OK
    diagram = usecase.call_args.args[0]
    assert diagram.label == diagram_label
    assert diagram.etale.names == ["z", "u"]
    assert diagram.coefficients is not None


def test_lift_command_real_run(write_input, standard_diagram_data, capsys):
    path = write_input("diagram.json", standard_diagram_data)

    assert main(["etale", "lift", "--diagram", path]) == EXIT_OK
    output = json.loads(capsys.readouterr().out)
    assert output["tables"]["images"] == {"z": {"1": "1"}, "u": {"1": "1/2"}}


def test_lift_command_fail_invalid_diagram(write_input, capsys):
    path = write_input("diagram.json", {"R": "gens x;"})

    assert main(["etale", "lift", "--diagram", path]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "IncorrectDataError"


def test_lift_command_fail_unknown_generator(write_input, standard_diagram_data, capsys):
    standard_diagram_data["x"] = "1 + w"
    path = write_input("diagram.json", standard_diagram_data)

    assert main(["etale", "lift", "--diagram", path]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "UnknownGeneratorError"


def test_check_command_seed_and_count(write_input, mocker, identity_alpha_data, dual_family_data):
    usecase = mocker.patch("api.etale.etale_commands.check_family_usecase", return_value=_report("etale check"))
    alpha_path = write_input("alpha.json", identity_alpha_data)
    family_path = write_input("family.json", dual_family_data)

    assert main(["etale", "check", "--alpha", alpha_path, "--family", family_path, "--count", "2"]) == EXIT_OK
    alpha, coefficients, factors, count, seed, d = usecase.call_args.args
    assert alpha.source.names == ["x"]
    assert coefficients is None
    assert len(factors) == 1
    assert (count, seed, d) == (2, 7, 1)


def test_check_command_seed_flag_wins(write_input, mocker, identity_alpha_data, dual_family_data):
    usecase = mocker.patch("api.etale.etale_commands.check_family_usecase", return_value=_report("etale check"))
    alpha_path = write_input("alpha.json", identity_alpha_data)
    family_path = write_input("family.json", dual_family_data)

    assert main(["etale", "check", "--alpha", alpha_path, "--family", family_path, "--seed", "5"]) == EXIT_OK
    assert usecase.call_args.args[3:5] == (3, 5)


def test_check_command_fail_factor_images(write_input, identity_alpha_data, point_family_data, capsys):
    alpha_path = write_input("alpha.json", identity_alpha_data)
    family_path = write_input("family.json", point_family_data)

    assert main(["etale", "check", "--alpha", alpha_path, "--family", family_path]) == EXIT_USAGE_ERROR
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error_code"] == "IncorrectDataError"


def test_closure_command(write_input, mocker, identity_diagram_data):
    usecase = mocker.patch("api.etale.etale_commands.closure_usecase", return_value=_report("etale closure"))
    path = write_input("diagram.json", identity_diagram_data)

    assert main(["etale", "closure", "--diagram", path, "--d", "2"]) == EXIT_OK
    assert usecase.call_args.args[1] == 2


def test_check_command_is_reproducible(write_input, identity_alpha_data, dual_family_data, capsys):
    alpha_path = write_input("alpha.json", identity_alpha_data)
    family_path = write_input("family.json", dual_family_data)
    argv = ["etale", "check", "--alpha", alpha_path, "--family", family_path, "--count", "3", "--seed", "11"]

    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    output = json.loads(first)
    assert [row["label"].split(" copies")[0] for row in output["tables"]["diagrams"]] == [
        "seed=11 index=0",
        "seed=11 index=1",
        "seed=11 index=2",
    ]
    assert len(output["tables"]["ambient_diagrams"]) == 3
