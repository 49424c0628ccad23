"""Lower central series and the noncommutative filtration F^d.

R_0 = R, R_{i+1} = [R, R_i]; F^d is the sum over compositions i_1+...+i_m = d
of the two-sided ideals R*R_{i_1}*R*...*R*R_{i_m}*R. r_d(R) = R / F^{d+1}.
"""
import logging
from typing import Dict, List, Tuple

from engines.algebra_engines import (
    TruncatedAlgebra,
    quotient_by_ideal,
    two_sided_ideal,
)
from engines.linalg_engines import Subspace, unit_vector

logger = logging.getLogger(__name__)


def compositions(d: int) -> List[Tuple[int, ...]]:
    """Ordered tuples of positive integers summing to d."""
    if d == 0:
        return [()]
    result = []
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            result.append((first,) + rest)
    return result


class FiltrationEngine:
    """Per-algebra cache of lcs terms and filtration ideals."""

    def __init__(self, alg: TruncatedAlgebra):
        self.alg = alg
        self._lcs: Dict[int, Subspace] = {0: Subspace.full(alg.dim)}
        self._filtration: Dict[int, Subspace] = {0: Subspace.full(alg.dim)}
        self._chains: Dict[Tuple[int, ...], Subspace] = {}

    def lcs_term(self, i: int) -> Subspace:
        if i not in self._lcs:
            previous = self.lcs_term(i - 1)
            commutators = [
                self.alg.commutator(unit_vector(a), row)
                for a in range(self.alg.dim)
                for row in previous.rows
            ]
            self._lcs[i] = Subspace.span(self.alg.dim, commutators)
        return self._lcs[i]

    def _chain(self, parts: Tuple[int, ...]) -> Subspace:
        # span of R_{i_1} * R * R_{i_2} * ... * R * R_{i_m}
        if parts not in self._chains:
            last = self.lcs_term(parts[-1])
            if len(parts) == 1:
                self._chains[parts] = last
            else:
                head = self._chain(parts[:-1])
                products = []
                for left in head.rows:
                    for b in range(self.alg.dim):
                        middle = self.alg.mul(left, unit_vector(b))
                        if not middle:
                            continue
                        products.extend(self.alg.mul(middle, right) for right in last.rows)
                self._chains[parts] = Subspace.span(self.alg.dim, products)
        return self._chains[parts]

    def nc_filtration(self, d: int) -> Subspace:
        if d not in self._filtration:
            rows = []
            for parts in compositions(d):
                chain = self._chain(parts)
                if not chain.is_zero():
                    rows.extend(chain.rows)
            self._filtration[d] = two_sided_ideal(self.alg, rows)
            logger.debug(f"F^{d} has dimension {self._filtration[d].rank}")
        return self._filtration[d]

    def filtration_dims(self, upto: int) -> List[int]:
        return [self.nc_filtration(d).rank for d in range(upto + 1)]

    def multiplicativity_failures(self, upto: int) -> List[Tuple[int, int]]:
        failures = []
        for i in range(1, upto + 1):
            for j in range(1, upto + 1 - i):
                target = self.nc_filtration(i + j)
                left, right = self.nc_filtration(i), self.nc_filtration(j)
                if any(
                    not target.contains(self.alg.mul(a, b)) for a in left.rows for b in right.rows
                ):
                    failures.append((i, j))
        return failures

    def decreasing_failures(self, upto: int) -> List[int]:
        return [
            d for d in range(upto) if not self.nc_filtration(d + 1).issubset(self.nc_filtration(d))
        ]


def filtration_engine(alg: TruncatedAlgebra) -> FiltrationEngine:
    """The engine cached on the algebra itself, released together with it."""
    engine = getattr(alg, "_filtration_engine", None)
    if engine is None:
        engine = FiltrationEngine(alg)
        alg._filtration_engine = engine
    return engine


def lcs_term(alg: TruncatedAlgebra, i: int) -> Subspace:
    return filtration_engine(alg).lcs_term(i)


def nc_filtration(alg: TruncatedAlgebra, d: int) -> Subspace:
    return filtration_engine(alg).nc_filtration(d)


def quotient_rd_with_projection(alg: TruncatedAlgebra, d: int):
    return quotient_by_ideal(alg, nc_filtration(alg, d + 1))


def quotient_rd(alg: TruncatedAlgebra, d: int) -> TruncatedAlgebra:
    """r_d(alg): the largest quotient lying in N_d at this truncation."""
    return quotient_rd_with_projection(alg, d)[0]


def abelianization(alg: TruncatedAlgebra) -> TruncatedAlgebra:
    return quotient_rd(alg, 0)


def rd_dim(alg: TruncatedAlgebra, d: int) -> int:
    """dim r_d(alg); 0 when F^{d+1} contains the unit."""
    if nc_filtration(alg, d + 1).contains(alg.unit):
        return 0
    return quotient_rd(alg, d).dim


def filtration_checks(alg: TruncatedAlgebra, upto: int) -> Dict[str, object]:
    engine = filtration_engine(alg)
    dims = engine.filtration_dims(upto + 1)
    rd_dims = [rd_dim(alg, d) for d in range(upto + 1)]
    commutative_r0 = not rd_dims[0] or abelianization(alg).is_commutative()
    idempotent, tower = [], []
    for d in range(upto + 1):
        if not rd_dims[d]:
            continue
        rd = quotient_rd(alg, d)
        if rd_dim(rd, d) != rd.dim or not nc_filtration(rd, d + 1).is_zero():
            idempotent.append(d)
        if d >= 1 and rd_dim(rd, d - 1) != rd_dims[d - 1]:
            tower.append(d)
    commutators_in_f1 = True
    f1 = engine.nc_filtration(1)
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            if not f1.contains(alg.commutator(unit_vector(a), unit_vector(b))):
                commutators_in_f1 = False
                break
    return {
        "filtration_dims": dims,
        "decreasing_failures": engine.decreasing_failures(upto + 1),
        "multiplicativity_failures": engine.multiplicativity_failures(upto),
        "r0_commutative": commutative_r0,
        "rd_dims": rd_dims,
        "idempotence_failures": idempotent,
        "tower_failures": tower,
        "commutators_in_f1": commutators_in_f1,
    }
