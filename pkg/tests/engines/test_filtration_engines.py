import gc
import weakref

import pytest

from engines.algebra_engines import build_truncated
from engines.filtration_engines import (
    abelianization,
    compositions,
    filtration_checks,
    filtration_engine,
    lcs_term,
    nc_filtration,
    quotient_rd,
    rd_dim,
)


def test_compositions():
    assert compositions(0) == [()]
    assert compositions(3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


def test_lcs_free_two_generators(free_xy):
    algebra = build_truncated(free_xy)
    assert lcs_term(algebra, 0).rank == 7
    assert lcs_term(algebra, 1).rank == 1
    assert lcs_term(algebra, 2).rank == 0


def test_filtration_free_two_generators(free_xy):
    algebra = build_truncated(free_xy)
    assert [nc_filtration(algebra, d).rank for d in range(4)] == [7, 1, 0, 0]


def test_commutative_algebra_has_zero_filtration(commutative_xy):
    algebra = build_truncated(commutative_xy)
    assert nc_filtration(algebra, 1).is_zero()
    assert quotient_rd(algebra, 0).dim == algebra.dim


def test_abelianization_of_free_is_polynomial(free_xy, commutative_xy):
    r0 = abelianization(build_truncated(free_xy))
    assert r0.is_commutative()
    assert r0.dim == build_truncated(commutative_xy).dim


def test_weyl_collapses(weyl):
    algebra = build_truncated(weyl)
    assert nc_filtration(algebra, 1).rank == algebra.dim
    assert rd_dim(algebra, 0) == 0


@pytest.mark.parametrize("fixture", ["weyl", "free_xy", "free_x", "commutative_xy"])
def test_filtration_checks_pass(fixture, request):
    pres = request.getfixturevalue(fixture)
    checks = filtration_checks(build_truncated(pres), pres.degree_bound)
    assert checks["decreasing_failures"] == []
    assert checks["multiplicativity_failures"] == []
    assert checks["r0_commutative"]
    assert checks["idempotence_failures"] == []
    assert checks["tower_failures"] == []
    assert checks["commutators_in_f1"]


def test_filtration_checks_dims(free_xy):
    checks = filtration_checks(build_truncated(free_xy), 2)
    assert checks["filtration_dims"] == [7, 1, 0, 0]
    assert checks["rd_dims"] == [6, 7, 7]


def test_filtration_engine_lives_with_its_algebra(free_xy):
    algebra = build_truncated(free_xy)
    engine = filtration_engine(algebra)
    assert filtration_engine(algebra) is engine
    assert filtration_engine(build_truncated(free_xy)) is not engine
    nc_filtration(algebra, 1)
    reference = weakref.ref(algebra)
    del algebra, engine
    gc.collect()
    assert reference() is None
