import pytest

from engines.ncpoly_engines import NcPoly
from engines.parser_engines import (
    parse_algebra_spec,
    parse_group,
    parse_poly,
    parse_presentation,
    print_presentation,
)
from exceptions import DataValidationException, ParseError, UnknownGenerator, ZeroModulus
from schemas.group_schemas import FiniteAbGroup
from tests.fixtures.presentation_fixtures import WEYL_TEXT


def test_parse_weyl(weyl):
    assert weyl.name == "Weyl"
    assert weyl.names == ["x", "d"]
    assert weyl.weights == [0, 1]
    assert weyl.degree_bound == 2
    x, d = NcPoly.generator(0), NcPoly.generator(1)
    assert weyl.relations == (d * x - x * d - 1,)


def test_print_parse_fixpoint(weyl):
    text = print_presentation(weyl)
    assert text == WEYL_TEXT
    assert parse_presentation(text) == weyl


def test_parse_defaults():
    pres = parse_presentation("gens x, y; # no bound given\n", default_bound=4)
    assert pres.name == "A"
    assert pres.weights == [1, 1]
    assert pres.degree_bound == 4
    assert pres.relations == ()


def test_parse_poly_operators():
    x, y = NcPoly.generator(0), NcPoly.generator(1)
    assert parse_poly("x^2 - 1/2*y", ["x", "y"]) == x * x - NcPoly.constant("1/2") * y
    assert parse_poly("-(x + y)*x", ["x", "y"]) == -(x * x) - y * x
    assert parse_poly("x^2^2", ["x"]) == x ** 4


def test_parse_fail_dangling_operator():
    with pytest.raises(ParseError) as error:
        parse_presentation("gens x, d;\nrel d*;\n")
    assert error.value.line == 2
    assert "line 2" in error.value.message


def test_parse_fail_unknown_generator():
    with pytest.raises(UnknownGenerator) as error:
        parse_presentation("gens x;\nrel x*y;\n")
    assert error.value.line == 2
    assert error.value.column == 7


def test_parse_fail_relation_above_bound():
    with pytest.raises(DataValidationException):
        parse_presentation("gens x;\nrel x*x*x;\nbound 2;\n")


def test_parse_group():
    assert parse_group("Z4xZ2").moduli == (4, 2)
    assert parse_group(" Z6 ").order == 6


def test_parse_group_fail_zero_modulus():
    with pytest.raises(ZeroModulus):
        parse_group("Z0")


@pytest.mark.parametrize("text", ["Z4x", "4xZ2", "Z-1", ""])
def test_parse_group_fail_malformed(text):
    with pytest.raises(ParseError):
        parse_group(text)


def test_parse_algebra_spec():
    group = FiniteAbGroup(moduli=(4, 2))
    generators = parse_algebra_spec("shift=(1,0);twist=(-1,1)", group)
    assert generators == [((1, 0), (0, 0)), ((0, 0), (3, 1))]
    assert parse_algebra_spec("", group) == []


def test_parse_algebra_spec_fail_wrong_rank():
    with pytest.raises(DataValidationException):
        parse_algebra_spec("shift=(1)", FiniteAbGroup(moduli=(4, 2)))
