"""Finite-dimensional truncated algebras given by structure constants.

A presented algebra is truncated at its degree bound D: normal forms are taken
modulo the span of all ``u*r*v`` with ``len(u) + deg(r) + len(v) <= D``.
Homogeneous presentations give the honest quotient ``A / A_{>D}``; for the
others every basis pair whose product leaves the bound is kept as an overflow
pair.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import QQ

from engines.linalg_engines import (
    Subspace,
    Vector,
    apply_linear,
    unit_vector,
    vec_add,
    vec_scale,
)
from engines.ncpoly_engines import NcPoly, Word, words_up_to
from exceptions import DegreeOverflow, InconsistentPresentation
from schemas.presentation_schemas import Presentation

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class TruncatedAlgebra:
    def __init__(
        self,
        labels: Sequence[str],
        table: Dict[Pair, Vector],
        unit: Vector,
        degrees: Sequence[int],
        bound: int,
        exact: bool = True,
        overflow: FrozenSet[Pair] = frozenset(),
        words: Optional[Sequence[Word]] = None,
        presentation: Optional[Presentation] = None,
        generator_images: Optional[Sequence[Vector]] = None,
        grades: Optional[Sequence[int]] = None,
        reducer: Optional[Callable[[NcPoly, bool], Vector]] = None,
    ):
        self.labels = tuple(labels)
        self.table = {pair: dict(value) for pair, value in table.items() if value}
        self.unit = dict(unit)
        self.degrees = tuple(degrees)
        self.bound = bound
        self.exact = exact
        self.overflow = frozenset(overflow)
        self.words = tuple(words) if words is not None else None
        self.presentation = presentation
        self.generator_images = tuple(dict(v) for v in generator_images) if generator_images is not None else None
        self.grades = tuple(grades) if grades is not None else None
        self._reducer = reducer

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, index: int) -> Vector:
        return unit_vector(index)

    def mul_basis(self, i: int, j: int, strict: bool = False) -> Vector:
        if strict and (i, j) in self.overflow:
            raise DegreeOverflow(
                f"Product {self.labels[i]}*{self.labels[j]} exceeds degree bound {self.bound}"
            )
        return self.table.get((i, j), {})

    def mul(self, left: Vector, right: Vector, strict: bool = False) -> Vector:
        result: Vector = {}
        for i, a in left.items():
            for j, b in right.items():
                product = self.mul_basis(i, j, strict)
                if product:
                    result = vec_add(result, product, a * b)
        return result

    def commutator(self, left: Vector, right: Vector, strict: bool = False) -> Vector:
        return vec_add(self.mul(left, right, strict), self.mul(right, left, strict), -1)

    def power(self, vector: Vector, exponent: int, strict: bool = False) -> Vector:
        result = dict(self.unit)
        for _ in range(exponent):
            result = self.mul(result, vector, strict)
        return result

    def evaluate(self, poly: NcPoly, images: Sequence[Vector], strict: bool = False) -> Vector:
        """Image of ``poly`` under the generator assignment ``images``."""
        result: Vector = {}
        for word, coeff in poly.items():
            term = dict(self.unit)
            for letter in word:
                term = self.mul(term, images[letter], strict)
                if not term:
                    break
            result = vec_add(result, term, coeff)
        return result

    def vector_of(self, poly: NcPoly, strict: bool = True) -> Vector:
        if self._reducer is not None:
            return self._reducer(poly, strict)
        if self.generator_images is None:
            raise InconsistentPresentation("Algebra has no generators to evaluate polynomials on")
        return self.evaluate(poly, self.generator_images, strict)

    def poly_of(self, vector: Vector) -> NcPoly:
        if self.words is None:
            raise InconsistentPresentation("Algebra basis is not indexed by words")
        return NcPoly({self.words[i]: coeff for i, coeff in vector.items()})

    def left_multiplication(self, vector: Vector, strict: bool = False) -> List[Vector]:
        return [self.mul(vector, unit_vector(j), strict) for j in range(self.dim)]

    def right_multiplication(self, vector: Vector, strict: bool = False) -> List[Vector]:
        return [self.mul(unit_vector(j), vector, strict) for j in range(self.dim)]

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if (i, j) in self.overflow or (j, i) in self.overflow:
                    continue
                if self.mul_basis(i, j) != self.mul_basis(j, i):
                    return False
        return True

    def degree_dims(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for degree in self.degrees:
            dims[degree] = dims.get(degree, 0) + 1
        return dict(sorted(dims.items()))

    def grade_indices(self, grade: int) -> List[int]:
        grades = self.grades if self.grades is not None else self.degrees
        return [i for i, g in enumerate(grades) if g == grade]

    def __repr__(self):
        return f"TruncatedAlgebra(dim={self.dim}, bound={self.bound}, exact={self.exact})"


@lru_cache(maxsize=64)
def word_ideal(pres: Presentation):
    generators, bound = len(pres.generators), pres.degree_bound
    words = words_up_to(generators, bound)
    index = {word: i for i, word in enumerate(words)}
    multiples = []
    for relation in pres.relations:
        if relation.is_zero():
            continue
        room = bound - relation.degree
        for left in words_up_to(generators, room):
            for right in words_up_to(generators, room - len(left)):
                vector: Vector = {}
                for word, coeff in relation.items():
                    key = index[left + word + right]
                    vector = vec_add(vector, {key: coeff})
                multiples.append(vector)
    ideal = Subspace.span(len(words), multiples)
    logger.debug(f"Presentation {pres.name}: {len(words)} words, ideal rank {ideal.rank}")
    return words, index, ideal


def _word_vector(pres: Presentation, index: Dict[Word, int], poly: NcPoly, strict: bool) -> Vector:
    vector: Vector = {}
    for word, coeff in poly.items():
        if len(word) > pres.degree_bound:
            if strict and not pres.is_homogeneous():
                raise DegreeOverflow(
                    f"Word of length {len(word)} exceeds degree bound {pres.degree_bound}"
                )
            continue
        vector = vec_add(vector, {index[word]: coeff})
    return vector


def _reduce_words(pres: Presentation, poly: NcPoly, strict: bool) -> Vector:
    _, index, ideal = word_ideal(pres)
    return ideal.reduce(_word_vector(pres, index, poly, strict))


def normal_form(poly: NcPoly, pres: Presentation, truncate: bool = False) -> NcPoly:
    """Canonical representative of ``poly`` modulo the truncated relation ideal."""
    words, _, _ = word_ideal(pres)
    reduced = _reduce_words(pres, poly, strict=not truncate)
    return NcPoly({words[key]: coeff for key, coeff in reduced.items()})


def build_truncated(pres: Presentation) -> TruncatedAlgebra:
    words, index, ideal = word_ideal(pres)
    return truncated_from_ideal(pres, words, index, ideal)


def truncated_from_ideal(
    pres: Presentation,
    words: Sequence[Word],
    index: Dict[Word, int],
    ideal: Subspace,
    grades: Optional[Sequence[int]] = None,
) -> TruncatedAlgebra:
    """Words of length <= D modulo ``ideal``; basis words are the non-pivot words.

    ``grades`` holds one grade per letter and defaults to the generator weights.
    """
    if ideal.contains(unit_vector(index[()])):
        logger.error(f"Presentation {pres.name} is inconsistent at degree {pres.degree_bound}")
        raise InconsistentPresentation(
            f"Relations of {pres.name} reduce 1 to 0 at degree bound {pres.degree_bound}"
        )
    pivots = set(ideal.pivots)
    basis = [i for i in range(len(words)) if i not in pivots]
    position = {word_index: k for k, word_index in enumerate(basis)}
    exact = pres.is_homogeneous()
    letter_grades = list(grades) if grades is not None else pres.weights

    def to_basis(vector: Vector) -> Vector:
        return {position[key]: coeff for key, coeff in vector.items()}

    table: Dict[Pair, Vector] = {}
    overflow = set()
    for a, i in enumerate(basis):
        for b, j in enumerate(basis):
            word = words[i] + words[j]
            if len(word) > pres.degree_bound:
                if not exact:
                    overflow.add((a, b))
                continue
            product = to_basis(ideal.reduce(unit_vector(index[word])))
            if product:
                table[(a, b)] = product

    def reducer(poly: NcPoly, strict: bool) -> Vector:
        return to_basis(ideal.reduce(_word_vector(pres, index, poly, strict)))

    generator_images = [
        reducer(NcPoly.generator(g), False) for g in range(len(pres.generators))
    ]
    basis_words = [words[i] for i in basis]
    return TruncatedAlgebra(
        labels=[_word_label(word, pres.names) for word in basis_words],
        table=table,
        unit=to_basis(unit_vector(index[()])),
        degrees=[len(word) for word in basis_words],
        bound=pres.degree_bound,
        exact=exact,
        overflow=frozenset(overflow),
        words=basis_words,
        presentation=pres,
        generator_images=generator_images,
        grades=[sum(letter_grades[l] for l in word) for word in basis_words],
        reducer=reducer,
    )


def _word_label(word: Word, names: Sequence[str]) -> str:
    return "*".join(names[letter] for letter in word) if word else "1"


def commutator(p: NcPoly, q: NcPoly, alg: TruncatedAlgebra) -> NcPoly:
    left, right = alg.vector_of(p), alg.vector_of(q)
    return alg.poly_of(alg.commutator(left, right, strict=True))


def two_sided_ideal(alg: TruncatedAlgebra, vectors: Sequence[Vector]) -> Subspace:
    seed = Subspace.span(alg.dim, vectors)
    if seed.is_zero():
        return seed
    left = Subspace.span(
        alg.dim,
        [alg.mul(unit_vector(a), row) for a in range(alg.dim) for row in seed.rows],
    )
    return Subspace.span(
        alg.dim,
        [alg.mul(row, unit_vector(b)) for b in range(alg.dim) for row in left.rows],
    )


def generated_subalgebra(alg: TruncatedAlgebra, vectors: Sequence[Vector]) -> Subspace:
    span = Subspace.span(alg.dim, [alg.unit] + list(vectors))
    while True:
        products = [alg.mul(a, b) for a in span.rows for b in vectors]
        grown = Subspace.span(alg.dim, list(span.rows) + products)
        if grown.rank == span.rank:
            return span
        span = grown


def quotient_by_ideal(alg: TruncatedAlgebra, ideal: Subspace) -> Tuple[TruncatedAlgebra, List[Vector]]:
    """Quotient algebra together with the images of the basis of ``alg``."""
    pivots = set(ideal.pivots)
    keep = [i for i in range(alg.dim) if i not in pivots]
    position = {old: new for new, old in enumerate(keep)}

    def project(vector: Vector) -> Vector:
        return {position[key]: coeff for key, coeff in ideal.reduce(vector).items()}

    projection = [project(unit_vector(i)) for i in range(alg.dim)]
    unit = project(alg.unit)
    if not unit:
        raise InconsistentPresentation("Ideal contains the unit")

    table: Dict[Pair, Vector] = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            product = project(alg.mul_basis(i, j))
            if product:
                table[(a, b)] = product
    overflow = {
        (position[i], position[j]) for i, j in alg.overflow if i in position and j in position
    }

    presentation, words = None, None
    if alg.words is not None:
        words = [alg.words[i] for i in keep]
    if alg.presentation is not None and alg.words is not None:
        extra = []
        for row in ideal.rows:
            for component in alg.poly_of(row).homogeneous_components():
                extra.append(component)
        presentation = alg.presentation.model_copy(
            update={
                "name": f"{alg.presentation.name}/I",
                "relations": tuple(alg.presentation.relations) + tuple(extra),
            }
        )

    reducer = None
    if alg._reducer is not None:
        parent = alg

        def reducer(poly: NcPoly, strict: bool) -> Vector:
            return project(parent.vector_of(poly, strict))

    generator_images = None
    if alg.generator_images is not None:
        generator_images = [project(image) for image in alg.generator_images]
    quotient = TruncatedAlgebra(
        labels=[alg.labels[i] for i in keep],
        table=table,
        unit=unit,
        degrees=[alg.degrees[i] for i in keep],
        bound=alg.bound,
        exact=alg.exact,
        overflow=frozenset(overflow),
        words=words,
        presentation=presentation,
        generator_images=generator_images,
        grades=[alg.grades[i] for i in keep] if alg.grades is not None else None,
        reducer=reducer,
    )
    return quotient, projection


def product_algebra(factors: Sequence[TruncatedAlgebra]) -> TruncatedAlgebra:
    labels, degrees, table, unit, overflow = [], [], {}, {}, set()
    offset = 0
    for k, factor in enumerate(factors):
        labels.extend(f"{k}:{label}" for label in factor.labels)
        degrees.extend(factor.degrees)
        for (i, j), value in factor.table.items():
            table[(i + offset, j + offset)] = {key + offset: c for key, c in value.items()}
        overflow.update((i + offset, j + offset) for i, j in factor.overflow)
        unit.update({key + offset: c for key, c in factor.unit.items()})
        offset += factor.dim
    return TruncatedAlgebra(
        labels=labels,
        table=table,
        unit=unit,
        degrees=degrees,
        bound=max(factor.bound for factor in factors),
        exact=all(factor.exact for factor in factors),
        overflow=frozenset(overflow),
    )


def tensor_vector(left: Vector, right: Vector, right_dim: int) -> Vector:
    return {i * right_dim + j: a * b for i, a in left.items() for j, b in right.items()}


def tensor_algebra(left: TruncatedAlgebra, right: TruncatedAlgebra) -> TruncatedAlgebra:
    """left (x) right on the basis e_i (x) f_j, stored at index i * right.dim + j."""
    m = right.dim
    table, overflow = {}, set()
    size = left.dim * m
    for p in range(size):
        i, j = divmod(p, m)
        for q in range(size):
            k, l = divmod(q, m)
            if (i, k) in left.overflow or (j, l) in right.overflow:
                overflow.add((p, q))
                continue
            value = tensor_vector(left.mul_basis(i, k), right.mul_basis(j, l), m)
            if value:
                table[(p, q)] = value
    return TruncatedAlgebra(
        labels=[f"{a}⊗{b}" for a in left.labels for b in right.labels],
        table=table,
        unit=tensor_vector(left.unit, right.unit, m),
        degrees=[a + b for a in left.degrees for b in right.degrees],
        bound=left.bound + right.bound,
        exact=left.exact and right.exact,
        overflow=frozenset(overflow),
    )


def embed_in_factor(factors: Sequence[TruncatedAlgebra], k: int, vector: Vector) -> Vector:
    offset = sum(factor.dim for factor in factors[:k])
    return {key + offset: coeff for key, coeff in vector.items()}


def diagonal_vector(factors: Sequence[TruncatedAlgebra], vectors: Sequence[Vector]) -> Vector:
    result: Vector = {}
    for k, vector in enumerate(vectors):
        result.update(embed_in_factor(factors, k, vector))
    return result


def scalar_vector(alg: TruncatedAlgebra, value) -> Vector:
    return vec_scale(alg.unit, QQ.convert(value) if not isinstance(value, int) else QQ(value))


def is_algebra_map(
    source: TruncatedAlgebra, target: TruncatedAlgebra, images: Sequence[Vector]
) -> Optional[Pair]:
    """First basis pair on which the linear map ``images`` fails to be multiplicative."""
    if apply_linear(images, source.unit) != target.unit:
        return (-1, -1)
    for i in range(source.dim):
        for j in range(source.dim):
            if (i, j) in source.overflow:
                continue
            left = apply_linear(images, source.mul_basis(i, j))
            try:
                right = target.mul(images[i], images[j], strict=True)
            except DegreeOverflow:
                continue
            if left != right:
                return (i, j)
    return None


def associativity_failures(alg: TruncatedAlgebra, limit: int = 1) -> List[Tuple[int, int, int]]:
    failures = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            if alg.degrees[i] + alg.degrees[j] > alg.bound:
                continue
            for k in range(alg.dim):
                if alg.degrees[i] + alg.degrees[j] + alg.degrees[k] > alg.bound:
                    continue
                try:
                    left = alg.mul(alg.mul_basis(i, j, True), unit_vector(k), True)
                    right = alg.mul(unit_vector(i), alg.mul_basis(j, k, True), True)
                except DegreeOverflow:
                    continue
                if left != right:
                    failures.append((i, j, k))
                    if len(failures) >= limit:
                        return failures
    return failures
