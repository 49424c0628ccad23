import pytest

from engines.algebra_engines import build_truncated
from engines.filtration_engines import nc_filtration
from engines.oracle_engines import WordSpace, associativity_oracle, filtration_oracle, orthogonality_oracle
from engines.parser_engines import parse_poly
from exceptions import BudgetExceeded
from usecases.oracle_usecases import free_presentation


def test_word_space_truncates():
    space = WordSpace(2, 2)
    assert len(space.words) == 7
    x, y = parse_poly("x", ["x", "y"]), parse_poly("y", ["x", "y"])
    assert space.multiply(x * y, x).is_zero()
    assert space.poly(space.vector(x * y - y * x)) == x * y - y * x


def test_filtration_oracle_two_generators():
    result = filtration_oracle(2, 2, 2, 1000)
    assert result["word_space"] == 7
    assert result["dims"] == [7, 1, 0]


def test_filtration_oracle_fail_budget():
    with pytest.raises(BudgetExceeded):
        filtration_oracle(2, 4, 4, 10)


@pytest.mark.slow
@pytest.mark.parametrize("generators, bound", [(2, 3), (3, 2), (2, 4)])
def test_filtration_oracle_matches_engine(generators, bound):
    oracle = filtration_oracle(generators, bound, bound, 10_000)
    algebra = build_truncated(free_presentation(generators, bound))
    engine = [algebra.dim] + [nc_filtration(algebra, d).rank for d in range(1, bound + 1)]
    assert oracle["dims"] == engine


def test_orthogonality_oracle(z2_z4):
    result = orthogonality_oracle(z2_z4, 1000)
    assert result["sums"] == 64
    assert result["failures"] == []
    assert result["poincare_inverse"]
    assert result["inverse_poincare"]


def test_orthogonality_oracle_fail_budget(z2_z4):
    with pytest.raises(BudgetExceeded):
        orthogonality_oracle(z2_z4, 63)


@pytest.mark.parametrize("seed", [0, 1])
def test_associativity_oracle(z3, seed):
    result = associativity_oracle(z3, seed, 100)
    assert result["entries"] == 9
    assert result["mismatches"] == 0
    assert result["associative"]
