"""Brute-force oracles computed straight from the definitions.

They do not go through structure constants or cached kernels, so their output
can be compared against the engines.
"""
import logging
from typing import Dict, List

from engines.filtration_engines import compositions
from engines.kernel_engines import (
    Kernel,
    field_of,
    inverse_kernel,
    orthogonality_failures,
    poincare,
    random_kernel,
)
from engines.linalg_engines import Subspace
from engines.ncpoly_engines import NcPoly, commutator_poly, words_up_to
from exceptions import BudgetExceeded
from schemas.group_schemas import FiniteAbGroup

logger = logging.getLogger(__name__)


def _check_budget(size: int, budget: int, what: str) -> None:
    if size > budget:
        logger.error(f"{what} of size {size} exceeds the budget {budget}")
        raise BudgetExceeded(f"{what} has size {size}, budget is {budget}")


class WordSpace:
    """Free algebra on ``generators`` letters truncated at ``bound``, in word coordinates."""

    def __init__(self, generators: int, bound: int):
        self.bound = bound
        self.words = words_up_to(generators, bound)
        self.index = {word: i for i, word in enumerate(self.words)}

    def vector(self, poly: NcPoly) -> Dict[int, object]:
        return {self.index[w]: c for w, c in poly.truncate(self.bound).items()}

    def span(self, polys: List[NcPoly]) -> Subspace:
        return Subspace.span(len(self.words), [self.vector(p) for p in polys])

    def poly(self, vector: Dict[int, object]) -> NcPoly:
        return NcPoly({self.words[i]: c for i, c in vector.items()})

    def multiply(self, left: NcPoly, right: NcPoly) -> NcPoly:
        return (left * right).truncate(self.bound)


def filtration_oracle(generators: int, bound: int, upto: int, budget: int) -> Dict[str, object]:
    """dim F^d for d <= upto in the truncated free algebra, from spanning words."""
    space = WordSpace(generators, bound)
    _check_budget(len(space.words), budget, "Word space")
    monomials = [NcPoly.monomial(w) for w in space.words]

    lcs = [space.span(monomials)]
    for i in range(1, upto + 1):
        previous = [space.poly(row) for row in lcs[-1].rows]
        lcs.append(
            space.span([commutator_poly(u, c).truncate(bound) for u in monomials for c in previous])
        )

    def chains(parts) -> List[NcPoly]:
        # u_0 c_1 u_1 c_2 ... c_m u_m with c_k from R_{i_k}
        current = [NcPoly.constant(1)]
        for part in parts:
            terms = [space.poly(row) for row in lcs[part].rows]
            extended = []
            for prefix in current:
                for u in monomials:
                    left = space.multiply(prefix, u)
                    if left.is_zero():
                        continue
                    extended.extend(space.multiply(left, c) for c in terms)
            current = [space.poly(row) for row in space.span(extended).rows]
        return [space.multiply(p, u) for p in current for u in monomials]

    dims = [len(space.words)]
    for d in range(1, upto + 1):
        spanning = []
        for parts in compositions(d):
            spanning.extend(chains(parts))
        dims.append(space.span(spanning).rank)
    return {"generators": generators, "bound": bound, "word_space": len(space.words), "dims": dims}


def orthogonality_oracle(group: FiniteAbGroup, budget: int) -> Dict[str, object]:
    """Every sum_chi chi(x) chi(x')^-1, and the Poincare composites against the diagonal."""
    _check_budget(group.order ** 2, budget, "Character sum table")
    failures, checked = orthogonality_failures(group)
    diagonal = Kernel.diagonal(group)
    return {
        "group": group.label,
        "sums": checked,
        "failures": [[list(x), list(y)] for x, y in failures],
        "poincare_inverse": poincare(group).circle(inverse_kernel(group)) == diagonal,
        "inverse_poincare": inverse_kernel(group).circle(poincare(group))
        == Kernel.diagonal(group.dual_group()),
    }


def associativity_oracle(group: FiniteAbGroup, seed: int, budget: int) -> Dict[str, object]:
    """(K o L) o M and K o (L o M) against the explicit double sum over the middle groups."""
    _check_budget(group.order ** 2, budget, "Kernel table")
    field = field_of(group)
    k, l, m = (random_kernel(group, seed * 3 + offset) for offset in range(3))
    left = k.circle(l).circle(m)
    right = k.circle(l.circle(m))
    elements = group.elements()
    mismatches = 0
    for a in elements:
        for b in elements:
            total = field.zero
            for y in elements:
                for z in elements:
                    total = total + k.entry(a, y) * l.entry(y, z) * m.entry(z, b)
            if total != left.entry(a, b) or total != right.entry(a, b):
                mismatches += 1
    return {
        "group": group.label,
        "seed": seed,
        "entries": len(elements) ** 2,
        "mismatches": mismatches,
        "associative": left == right,
    }
