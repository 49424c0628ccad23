import pytest
from sympy import QQ

from engines.linalg_engines import (
    Subspace,
    kernel_of,
    qq_str,
    solve_affine,
    to_qq,
    vec_add,
)
from exceptions import DataValidationException


def test_to_qq_parses_fractions():
    assert to_qq("3/4") == QQ(3, 4)
    assert to_qq(" -2 ") == QQ(-2)
    assert to_qq(5) == QQ(5)


@pytest.mark.parametrize("text", ["abc", "1/0", "1.5"])
def test_to_qq_fail_not_rational(text):
    with pytest.raises(DataValidationException):
        to_qq(text)


def test_qq_str_is_canonical():
    assert qq_str(QQ(2, 4)) == "1/2"
    assert qq_str(QQ(-6, 3)) == "-2"
    assert qq_str("0") == "0"


def test_vec_add_drops_cancelled_coordinates():
    assert vec_add({0: QQ(1), 1: QQ(2)}, {1: QQ(1)}, -2) == {0: QQ(1)}


def test_subspace_pivots_are_highest_coordinates():
    space = Subspace.span(3, [{0: QQ(1), 2: QQ(1)}, {2: QQ(2)}])
    assert space.rank == 2
    assert space.pivots == [0, 2]
    assert space.rows == ({0: QQ(1)}, {2: QQ(1)})


def test_subspace_reduce_and_contains():
    space = Subspace.span(3, [{1: QQ(1), 2: QQ(1)}])
    assert space.reduce({2: QQ(3)}) == {1: QQ(-3)}
    assert space.contains({1: QQ(2), 2: QQ(2)})
    assert not space.contains({0: QQ(1)})


def test_subspace_sum_and_subset():
    left = Subspace.span(3, [{0: QQ(1)}])
    right = Subspace.span(3, [{1: QQ(1)}])
    total = left + right
    assert total.rank == 2
    assert left.issubset(total)
    assert not total.issubset(left)
    assert Subspace.full(3) == Subspace.span(3, [{0: QQ(1)}, {1: QQ(1)}, {2: QQ(5)}])


def test_subspace_sum_fail_dimension_mismatch():
    with pytest.raises(DataValidationException):
        Subspace.zero(2) + Subspace.zero(3)


def test_solve_affine_unique():
    # x + y = 3, x - y = 1
    solution = solve_affine([{0: 1, 1: 1}, {0: 1, 1: -1}], [3, 1], 2)
    assert solution.consistent
    assert solution.nullity == 0
    assert solution.particular == {0: QQ(2), 1: QQ(1)}


def test_solve_affine_inconsistent():
    solution = solve_affine([{0: 1}, {0: 1}], [1, 2], 1)
    assert not solution.consistent
    assert solution.particular is None


def test_solve_affine_without_equations_is_free():
    solution = solve_affine([], [], 3)
    assert solution.consistent
    assert solution.nullity == 3


def test_kernel_of_projection():
    # (a, b, c) -> (a, b)
    kernel = kernel_of([{0: QQ(1)}, {1: QQ(1)}, {}], 2)
    assert kernel == ({2: QQ(1)},)
