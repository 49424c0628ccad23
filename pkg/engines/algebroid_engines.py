"""Enveloping algebras of Lie algebroid presentations.

Generators of U(L) are the base generators followed by the L-generators.
Relations: the base relations, l_i*x_j - x_j*l_i - sigma(l_i)(x_j), and
l_i*l_j - l_j*l_i - sum_k c_ijk*l_k - omega_ij for i < j. A nonzero scalar part
omega gives U°(L~), where the central element is identified with 1.
"""
import logging
from math import comb
from typing import Dict, List, Tuple

from engines.algebra_engines import build_truncated, normal_form
from engines.ncpoly_engines import NcPoly
from exceptions import JacobiFailure
from schemas.presentation_schemas import Generator, LieAlgebroidPresentation, Presentation

logger = logging.getLogger(__name__)

# index of the central element in coefficient dicts
CENTRAL = -1


class AlgebroidEngine:
    def __init__(self, lp: LieAlgebroidPresentation):
        self.lp = lp
        self.base = lp.base

    def apply_anchor(self, i: int, f: NcPoly) -> NcPoly:
        """sigma(l_i)(f), extended from the generators by the Leibniz rule."""
        images = self.lp.anchor_images(i)
        result = NcPoly()
        for word, coeff in f.items():
            for position, letter in enumerate(word):
                prefix = NcPoly.monomial(word[:position])
                suffix = NcPoly.monomial(word[position + 1:])
                result = result + coeff * prefix * images[letter] * suffix
        return result

    def reduce(self, f: NcPoly) -> NcPoly:
        return normal_form(f, self.base, truncate=True)

    def bracket_with(self, i: int, combination: Dict[int, NcPoly]) -> Dict[int, NcPoly]:
        """[l_i, sum_m f_m l_m] with the central element carried at CENTRAL."""
        result: Dict[int, NcPoly] = {}

        def add(key: int, value: NcPoly):
            result[key] = result.get(key, NcPoly()) + value

        for m, f in combination.items():
            add(m, self.apply_anchor(i, f))
            if m == CENTRAL:
                continue
            coefficients, scalar = self.lp.bracket(i, m)
            for k, c in coefficients.items():
                add(k, f * c)
            add(CENTRAL, f * scalar)
        return result

    def bracket_combination(self, i: int, j: int) -> Dict[int, NcPoly]:
        coefficients, scalar = self.lp.bracket(i, j)
        combination = dict(coefficients)
        combination[CENTRAL] = scalar
        return combination

    def jacobi_failures(self) -> List[Tuple[int, int, int]]:
        failures = []
        rank = self.lp.rank
        for i in range(rank):
            for j in range(i + 1, rank):
                for k in range(j + 1, rank):
                    total: Dict[int, NcPoly] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for key, value in self.bracket_with(a, self.bracket_combination(b, c)).items():
                            total[key] = total.get(key, NcPoly()) + value
                    if any(not self.reduce(value).is_zero() for value in total.values()):
                        failures.append((i, j, k))
        return failures

    def anchor_failures(self) -> List[str]:
        failures = []
        for i in range(self.lp.rank):
            for r, relation in enumerate(self.base.relations):
                if not self.reduce(self.apply_anchor(i, relation)).is_zero():
                    failures.append(f"sigma({self.lp.generators[i]}) does not preserve relation {r}")
        for i in range(self.lp.rank):
            for j in range(i + 1, self.lp.rank):
                coefficients, _ = self.lp.bracket(i, j)
                for g in range(len(self.base.generators)):
                    x = NcPoly.generator(g)
                    lhs = self.apply_anchor(i, self.apply_anchor(j, x)) - self.apply_anchor(
                        j, self.apply_anchor(i, x)
                    )
                    rhs = NcPoly()
                    for k, c in coefficients.items():
                        rhs = rhs + c * self.apply_anchor(k, x)
                    if not self.reduce(lhs - rhs).is_zero():
                        failures.append(
                            f"sigma is not a Lie map on ({self.lp.generators[i]}, {self.lp.generators[j]})"
                        )
                        break
        return failures

    def verify(self) -> None:
        jacobi = self.jacobi_failures()
        if jacobi:
            names = [self.lp.generators[k] for k in jacobi[0]]
            logger.error(f"Jacobi identity fails on {names}")
            raise JacobiFailure(f"Jacobi identity fails on {names}")
        anchor = self.anchor_failures()
        if anchor:
            logger.error(anchor[0])
            raise JacobiFailure(anchor[0])


def enveloping_presentation(lp: LieAlgebroidPresentation) -> Presentation:
    AlgebroidEngine(lp).verify()
    base = lp.base
    offset = len(base.generators)

    def ell(i: int) -> NcPoly:
        return NcPoly.generator(offset + i)

    relations = list(base.relations)
    for i in range(lp.rank):
        for j, image in enumerate(lp.anchor_images(i)):
            x = NcPoly.generator(j)
            relations.append(ell(i) * x - x * ell(i) - image)
    for i in range(lp.rank):
        for j in range(i + 1, lp.rank):
            coefficients, scalar = lp.bracket(i, j)
            relation = ell(i) * ell(j) - ell(j) * ell(i) - scalar
            for k, c in coefficients.items():
                relation = relation - c * ell(k)
            relations.append(relation)
    relations = [relation for relation in relations if not relation.is_zero()]

    bound = lp.degree_bound or base.degree_bound
    bound = max([bound] + [relation.degree for relation in relations])
    generators = tuple(Generator(name=g.name, weight=0) for g in base.generators) + tuple(
        Generator(name=name, weight=1) for name in lp.generators
    )
    return Presentation(
        name=f"U({base.name})",
        generators=generators,
        relations=tuple(relations),
        degree_bound=bound,
    )


def pbw_dimensions(lp: LieAlgebroidPresentation, bound: int) -> Dict[str, List[int]]:
    """Dims of gr U by L-weight next to dims of Sym(L) tensor the base, for weights <= bound."""
    pres = enveloping_presentation(lp).with_bound(bound)
    enveloping = build_truncated(pres)
    base = build_truncated(lp.base.with_bound(bound))
    base_dims = base.degree_dims()

    enveloping_dims = [0] * (bound + 1)
    for grade in enveloping.grades:
        enveloping_dims[grade] += 1
    symmetric_dims = []
    for i in range(bound + 1):
        sym_i = comb(lp.rank + i - 1, i) if lp.rank else int(i == 0)
        symmetric_dims.append(
            sum(dim for degree, dim in base_dims.items() if degree <= bound - i) * sym_i
        )
    return {"enveloping": enveloping_dims, "symmetric": symmetric_dims}


def pbw_dimension_check(lp: LieAlgebroidPresentation, bound: int) -> Dict[str, object]:
    dims = pbw_dimensions(lp, bound)
    first_failure = next(
        (i for i, (u, s) in enumerate(zip(dims["enveloping"], dims["symmetric"])) if u != s),
        None,
    )
    return {**dims, "match": first_failure is None, "first_failure": first_failure}
