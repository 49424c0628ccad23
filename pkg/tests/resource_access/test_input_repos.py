import pytest

from exceptions import DataValidationException, ParseError
from resource_access.repositories.input_repos import InputRepository
from tests.fixtures.presentation_fixtures import WEYL_TEXT


@pytest.mark.asyncio
async def test_get_presentation(write_input):
    repository = InputRepository(default_bound=3)
    pres = await repository.get_presentation(write_input("weyl.pres", WEYL_TEXT))
    assert pres.name == "Weyl"
    assert pres.degree_bound == 2


@pytest.mark.asyncio
async def test_get_presentation_default_bound(write_input):
    repository = InputRepository(default_bound=5)
    pres = await repository.get_presentation(write_input("free.pres", "gens x;\n"))
    assert pres.degree_bound == 5


@pytest.mark.asyncio
async def test_get_presentation_fail_missing_file(tmp_path):
    with pytest.raises(DataValidationException):
        await InputRepository(default_bound=3).get_presentation(str(tmp_path / "missing.pres"))


@pytest.mark.asyncio
async def test_get_presentation_fail_parse(write_input):
    with pytest.raises(ParseError):
        await InputRepository(default_bound=3).get_presentation(write_input("bad.pres", "gens x;\nrel x*;\n"))


@pytest.mark.asyncio
async def test_get_diagram(write_input, standard_diagram_data, diagram_label):
    diagram_in = await InputRepository(default_bound=2).get_diagram(
        write_input("diagram.json", standard_diagram_data)
    )
    assert diagram_in.label == diagram_label
    assert diagram_in.maps.beta == ["1", "1/2"]
    assert diagram_in.a == ["-1", "0", "1"]


@pytest.mark.asyncio
async def test_get_alpha_with_term_lists(write_input):
    alpha_in = await InputRepository(default_bound=2).get_alpha(
        write_input("alpha.json", {"R": "gens x;", "S": "gens x;", "alpha": [[{"word": [0], "coeff": 2}]]})
    )
    assert alpha_in.alpha[0][0].word == [0]
    assert alpha_in.alpha[0][0].coeff == "2"


@pytest.mark.asyncio
async def test_get_family_fail_empty_factors(write_input):
    with pytest.raises(DataValidationException) as exc:
        await InputRepository(default_bound=2).get_family(write_input("family.json", {"factors": []}))
    assert "factors" in exc.value.message


@pytest.mark.asyncio
async def test_get_model_fail_invalid_json(write_input):
    with pytest.raises(DataValidationException):
        await InputRepository(default_bound=2).get_algebroid(write_input("algebroid.json", "{not json"))
