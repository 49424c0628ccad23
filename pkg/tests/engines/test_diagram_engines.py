import pytest
from sympy import QQ

from engines.diagram_engines import DiagramEngine
from engines.ncpoly_engines import NcPoly
from exceptions import DataValidationException, UnknownGenerator
from schemas.diagram_schemas import AlgebroidIn, AlphaIn, FamilyIn, TermIn


def test_poly_from_text_and_terms():
    names = ["x", "y"]
    assert DiagramEngine.poly("x*y - 2", names) == NcPoly.monomial((0, 1)) - 2
    terms = [TermIn(word=[0, 1], coeff="1"), TermIn(word=[], coeff=-2)]
    assert DiagramEngine.poly(terms, names) == NcPoly.monomial((0, 1)) - 2


def test_poly_fail_term_beyond_generators():
    with pytest.raises(DataValidationException):
        DiagramEngine.poly([TermIn(word=[2])], ["x", "y"])


def test_poly_fail_unknown_name():
    with pytest.raises(UnknownGenerator):
        DiagramEngine.poly("x*z", ["x", "y"])


def test_build_diagram_preimages(standard_diagram):
    assert standard_diagram.preimages == {0: {0: 1, 1: 1}, 1: {0: QQ(1, 2)}}
    assert standard_diagram.extension.total.labels == ("1", "e")
    assert standard_diagram.commutation_failures() == []


def test_build_alpha_coefficients(identity_alpha_data):
    alpha, coefficients = DiagramEngine.build_alpha(AlphaIn(**identity_alpha_data, a=["x", "1"]), 2)
    assert alpha.source.names == ["x"]
    assert coefficients == (NcPoly.generator(0), NcPoly.constant(1))


def test_build_factors_fail_image_count(identity_alpha_data, point_family_data):
    alpha, _ = DiagramEngine.build_alpha(AlphaIn(**identity_alpha_data), 2)
    with pytest.raises(DataValidationException):
        DiagramEngine.build_factors(FamilyIn(**point_family_data), alpha.source, 2)


def test_build_algebroid():
    algebroid = DiagramEngine.build_algebroid(
        AlgebroidIn(base="gens x;\nbound 3;\n", generators=["d"], anchor=[["1"]], bound=3), 2
    )
    assert algebroid.rank == 1
    assert algebroid.anchor == ((NcPoly.constant(1),),)
    assert algebroid.degree_bound == 3
