import pytest

from engines.algebra_engines import build_truncated
from engines.microloc_engines import (
    FilteredAlgebra,
    TAdicModule,
    associated_graded,
    filtration_ideals,
    gr_n,
    graded_piece,
    grn_projection,
    homogenize,
    lift_independence,
    localize_deg0,
    quotient_by_t,
    rank_one_criterion,
    rees_presentation,
    shift_bimodule,
    tensor_comparison,
)
from engines.parser_engines import parse_poly, parse_presentation
from exceptions import DataValidationException, HypothesisFailure, NotFiltered, ZeroSymbol

# x*x*x reduces to d*d, which has weight 2
UNFILTERED_TEXT = "algebra Bad;\ngens x:0, d:1;\nrel x*x*x - d*d;\nbound 3;\n"


@pytest.fixture(scope="function")
def weyl_filtered(weyl):
    return FilteredAlgebra(weyl)


def test_piece_dims(weyl_filtered):
    assert weyl_filtered.piece_dims() == [3, 5, 6]


def test_associated_graded(weyl_filtered):
    graded = associated_graded(weyl_filtered)
    assert graded.commutative
    assert graded.generated_in_degree_one
    assert not weyl_filtered.algebra.is_commutative()


def test_filtered_fail_weight_jump():
    with pytest.raises(NotFiltered):
        FilteredAlgebra(parse_presentation(UNFILTERED_TEXT)).verify()


def test_gr_n_fail_negative_level(weyl_filtered):
    with pytest.raises(DataValidationException):
        gr_n(weyl_filtered, -1)


def test_gr_one(weyl_filtered):
    mg = gr_n(weyl_filtered, 1)
    assert mg.grade_dims() == [3, 5, 3, 1]
    assert mg.dim == 12
    assert mg.t_checks() == {"t_central": True, "t_nilpotent": True, "t_nondegenerate": True}
    assert mg.t_power(1) == mg.t
    assert mg.t_power(2) == {}


def test_gr_zero_is_associated_graded(weyl_filtered):
    mg = gr_n(weyl_filtered, 0)
    assert mg.grade_dims() == [3, 2, 1]
    assert mg.algebra.is_commutative()


def test_filtration_ideals(weyl_filtered):
    ideals, checks = filtration_ideals(gr_n(weyl_filtered, 1))
    assert [ideal.rank for ideal in ideals] == [12, 6, 0]
    assert all(checks.values())


def test_quotient_by_t(weyl_filtered):
    assert quotient_by_t(gr_n(weyl_filtered, 1)) == {
        "quotient_dims_match": True,
        "quotient_constants_match": True,
    }


def test_grn_projection(weyl_filtered):
    result = grn_projection(gr_n(weyl_filtered, 2), gr_n(weyl_filtered, 1))
    assert result["multiplicative"]
    assert result["surjective"]
    assert result["kernel_dim"] == result["expected_kernel_dim"] == 6


def test_tensor_comparison(weyl_filtered, free_x):
    assert tensor_comparison(gr_n(FilteredAlgebra(free_x), 1))
    # the commutator d*x - x*d = 1 survives as t in gr_1
    assert not tensor_comparison(gr_n(weyl_filtered, 1))


def test_homogenize():
    names = ["x", "d", "t"]
    poly = parse_poly("d*x - x*d - 1", names)
    assert homogenize(poly, [0, 1, 1], 2) == parse_poly("d*x - x*d - t", names)
    assert homogenize(poly, [0, 1, 1], 2, weight=2) == parse_poly("d*x*t - x*d*t - t*t", names)


def test_homogenize_fail_low_weight():
    with pytest.raises(DataValidationException):
        homogenize(parse_poly("d*d", ["x", "d", "t"]), [0, 1, 1], 2, weight=1)


def test_rees_presentation(weyl_filtered):
    rees = rees_presentation(weyl_filtered, 1)
    assert rees.names == ["x", "d", "t"]
    assert rees.weights == [0, 1, 1]
    assert len(rees.relations) == 4
    assert parse_poly("t*t", rees.names) in rees.relations


def test_graded_piece(weyl):
    alg = build_truncated(weyl)
    assert graded_piece(alg, 0).labels == ("1", "x", "x*x")
    with pytest.raises(NotFiltered):
        graded_piece(alg, 1)


def test_localize_fail_zero_symbol(weyl, weyl_filtered):
    with pytest.raises(ZeroSymbol):
        localize_deg0(gr_n(weyl_filtered, 1), parse_poly("x", weyl.names))


def test_localize_fail_high_weight(weyl, weyl_filtered):
    with pytest.raises(DataValidationException):
        localize_deg0(gr_n(weyl_filtered, 1), parse_poly("d*d", weyl.names))


@pytest.mark.slow
def test_localize_canonical_action(weyl, weyl_filtered):
    loc = localize_deg0(gr_n(weyl_filtered, 1), parse_poly("d", weyl.names))
    assert loc.presentation.names[-1] == "v"
    assert shift_bimodule(loc, 1)["canonical_action"]


def test_localize_grades(weyl, weyl_filtered):
    loc = localize_deg0(gr_n(weyl_filtered, 1), parse_poly("d", weyl.names))
    letter_grades = [0, 1, 1, -1]
    alg = loc.algebra
    assert alg.grades == tuple(sum(letter_grades[letter] for letter in word) for word in alg.words)
    assert set(loc.v) <= set(alg.grade_indices(-1))
    assert set(loc.t) <= set(alg.grade_indices(1))


def test_localize_relations_vanish(weyl, weyl_filtered):
    loc = localize_deg0(gr_n(weyl_filtered, 1), parse_poly("d", weyl.names))
    names = loc.presentation.names
    assert names == ["x", "d", "t", "v"]
    for relation in loc.presentation.relations:
        assert loc.algebra.vector_of(relation, strict=True) == {}
    # [v, x] = -t*v*v, so t*[v, x] = 0 although it needs words past the bound to see it
    assert loc.algebra.vector_of(parse_poly("v*x*t - x*v*t", names), strict=True) == {}
    assert loc.algebra.vector_of(parse_poly("v*v*x - 2*v*x*v + x*v*v", names), strict=True) == {}
    assert loc.algebra.vector_of(parse_poly("v*x - x*v", names), strict=True) != {}


def test_lift_independence_same_lift(weyl, weyl_filtered):
    mg = gr_n(weyl_filtered, 1)
    first = localize_deg0(mg, parse_poly("d", weyl.names))
    second = localize_deg0(mg, parse_poly("d", weyl.names))
    result = lift_independence(first, second)
    assert result["checked"] > 0
    assert result["failures"] == 0
    assert result["degree_zero_dims"][0] == result["degree_zero_dims"][1]


@pytest.mark.parametrize("lift", ["d + x", "d - 3", "d + 1/2"])
def test_lift_independence(weyl, weyl_filtered, lift):
    mg = gr_n(weyl_filtered, 1)
    first = localize_deg0(mg, parse_poly("d", weyl.names))
    second = localize_deg0(mg, parse_poly("d", weyl.names), parse_poly(lift, weyl.names))
    result = lift_independence(first, second)
    assert result["checked"] > 0
    assert result["failures"] == 0


@pytest.mark.slow
@pytest.mark.parametrize("lift", ["d + x", "d - 3", "d + 1/2", "d + 2*x - 1"])
def test_lift_independence_bound_four(weyl, lift):
    fa = FilteredAlgebra(weyl.with_bound(4))
    mg = gr_n(fa, 1)
    assert mg.t_checks()["t_nilpotent"]
    first = localize_deg0(mg, parse_poly("d", weyl.names))
    second = localize_deg0(mg, parse_poly("d", weyl.names), parse_poly(lift, weyl.names))
    assert first.algebra.bound == second.algebra.bound == 4
    result = lift_independence(first, second)
    assert result["checked"] > 0
    assert result["failures"] == 0
    assert shift_bimodule(second, 1)["associative"]
    assert shift_bimodule(second, 1)["canonical_action"]


def test_rank_one_free(truncated_t):
    alg = build_truncated(truncated_t)
    t = alg.generator_images[0]
    result = rank_one_criterion(TAdicModule(alg, t=t, rank=1, generators=[[alg.unit]]))
    assert result.free
    assert result.residue_dim == result.quotient_dim == 1
    assert result.module_dim == 3


def test_rank_one_not_free(truncated_t):
    alg = build_truncated(truncated_t)
    t = alg.generator_images[0]
    result = rank_one_criterion(TAdicModule(alg, t=t, rank=1, generators=[[t]]))
    assert not result.free
    assert result.generator is None
    assert result.witness == "a -> a*g is not injective"


def test_rank_one_fail_unit_not_nilpotent(truncated_t):
    alg = build_truncated(truncated_t)
    with pytest.raises(HypothesisFailure):
        rank_one_criterion(TAdicModule(alg, t=alg.unit, rank=1, generators=[[alg.unit]]))
