"""Microlocalization of filtered presentations.

The filtration of a presented algebra comes from generator weights: A_i is the
span of the normal-form words of weight <= i. gr_(n)(A) has basis pairs (i, w)
with i - n <= wt(w) <= i, and t = (1, 1).
"""
import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from engines.algebra_engines import (
    TruncatedAlgebra,
    build_truncated,
    is_algebra_map,
    normal_form,
    quotient_by_ideal,
    truncated_from_ideal,
    two_sided_ideal,
)
from engines.linalg_engines import (
    Subspace,
    Vector,
    apply_linear,
    kernel_of,
    unit_vector,
    vec_add,
    vec_scale,
)
from engines.ncpoly_engines import NcPoly, Word, commutator_poly, words_up_to
from exceptions import (
    DataValidationException,
    DegreeOverflow,
    HypothesisFailure,
    NotFiltered,
    ZeroSymbol,
)
from schemas.presentation_schemas import Generator, Presentation, fresh_name

logger = logging.getLogger(__name__)


class FilteredAlgebra:
    def __init__(self, pres: Presentation, algebra: Optional[TruncatedAlgebra] = None):
        self.pres = pres
        self.algebra = algebra or build_truncated(pres)
        self.weights = tuple(self.algebra.grades)
        self.max_weight = max(self.weights)

    def weight_of(self, vector: Vector) -> int:
        return max((self.weights[key] for key in vector), default=-1)

    def piece(self, i: int) -> Subspace:
        return Subspace.span(
            self.algebra.dim, [unit_vector(a) for a, w in enumerate(self.weights) if w <= i]
        )

    def piece_dims(self) -> List[int]:
        return [self.piece(i).rank for i in range(self.max_weight + 1)]

    def top_component(self, vector: Vector, weight: int) -> Vector:
        return {key: coeff for key, coeff in vector.items() if self.weights[key] == weight}

    def verify(self) -> None:
        alg = self.algebra
        for a in range(alg.dim):
            for b in range(alg.dim):
                if (a, b) in alg.overflow:
                    continue
                if self.weight_of(alg.mul_basis(a, b)) > self.weights[a] + self.weights[b]:
                    logger.error(f"Product {alg.labels[a]}*{alg.labels[b]} leaves A_{self.weights[a] + self.weights[b]}")
                    raise NotFiltered(
                        f"{alg.labels[a]}*{alg.labels[b]} is not in A_{self.weights[a] + self.weights[b]}"
                    )


@dataclass(frozen=True)
class GradedResult:
    algebra: TruncatedAlgebra
    commutative: bool
    generated_in_degree_one: bool


def associated_graded(fa: FilteredAlgebra) -> GradedResult:
    fa.verify()
    alg = fa.algebra
    table = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            top = fa.top_component(alg.mul_basis(a, b), fa.weights[a] + fa.weights[b])
            if top:
                table[(a, b)] = top
    generator_images = None
    if alg.generator_images is not None:
        generator_images = [
            fa.top_component(image, fa.weight_of(image)) for image in alg.generator_images
        ]
    graded = TruncatedAlgebra(
        labels=alg.labels,
        table=table,
        unit=alg.unit,
        degrees=alg.degrees,
        bound=alg.bound,
        exact=alg.exact,
        overflow=alg.overflow,
        words=alg.words,
        generator_images=generator_images,
        grades=fa.weights,
    )
    low = [unit_vector(a) for a, w in enumerate(fa.weights) if w <= 1]
    generated = _generated_rank(graded, low) == graded.dim
    return GradedResult(graded, graded.is_commutative(), generated)


def _generated_rank(alg: TruncatedAlgebra, vectors: Sequence[Vector]) -> int:
    span = Subspace.span(alg.dim, [alg.unit] + list(vectors))
    while True:
        grown = Subspace.span(
            alg.dim, list(span.rows) + [alg.mul(a, b) for a in span.rows for b in vectors]
        )
        if grown.rank == span.rank:
            return span.rank
        span = grown


class MicroGraded:
    """gr_(n)(A) = sum_i A_i / A_{i-n-1}, with its central element t."""

    def __init__(self, fa: FilteredAlgebra, n: int):
        if n < 0:
            raise DataValidationException(f"Level must be nonnegative, got {n}")
        fa.verify()
        self.fa = fa
        self.n = n
        self.top_grade = fa.max_weight + n
        alg = fa.algebra
        self.entries: List[Tuple[int, int]] = [
            (i, a)
            for i in range(self.top_grade + 1)
            for a in range(alg.dim)
            if i - n <= fa.weights[a] <= i
        ]
        self.index: Dict[Tuple[int, int], int] = {entry: k for k, entry in enumerate(self.entries)}

        table, overflow = {}, set()
        for p, (i, a) in enumerate(self.entries):
            for q, (j, b) in enumerate(self.entries):
                if (a, b) in alg.overflow:
                    overflow.add((p, q))
                    continue
                grade = i + j
                value = {
                    self.index[(grade, c)]: coeff
                    for c, coeff in alg.mul_basis(a, b).items()
                    if fa.weights[c] >= grade - n and grade <= self.top_grade
                }
                if value:
                    table[(p, q)] = value
        unit_word = min(alg.unit)
        self.unit_word = unit_word
        self.algebra = TruncatedAlgebra(
            labels=[f"{i}|{alg.labels[a]}" for i, a in self.entries],
            table=table,
            unit={self.index[(0, unit_word)]: QQ(1)},
            degrees=[alg.degrees[a] for _, a in self.entries],
            bound=alg.bound,
            exact=alg.exact,
            overflow=frozenset(overflow),
            grades=[i for i, _ in self.entries],
        )
        self.t: Vector = unit_vector(self.index[(1, unit_word)]) if n >= 1 else {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def grade_dims(self) -> List[int]:
        dims = [0] * (self.top_grade + 1)
        for i, _ in self.entries:
            dims[i] += 1
        return dims

    def t_power(self, k: int) -> Vector:
        return self.algebra.power(self.t, k) if k else dict(self.algebra.unit)

    def expected_ideal(self, k: int) -> Subspace:
        """(t^k) = span of the (i, w) with wt(w) <= i - k."""
        return Subspace.span(
            self.dim,
            [unit_vector(p) for p, (i, a) in enumerate(self.entries) if self.fa.weights[a] <= i - k],
        )

    def t_checks(self) -> Dict[str, bool]:
        alg = self.algebra
        central = all(not alg.commutator(self.t, unit_vector(p)) for p in range(self.dim))
        nilpotent = not self.t_power(self.n + 1)
        distinct = self.fa.piece(self.n).rank != self.fa.piece(self.n - 1).rank if self.n >= 1 else True
        nondegenerate = bool(self.t_power(self.n)) or not distinct
        return {"t_central": central, "t_nilpotent": nilpotent, "t_nondegenerate": nondegenerate}


def gr_n(fa: FilteredAlgebra, n: int) -> MicroGraded:
    return MicroGraded(fa, n)


def filtration_ideals(mg: MicroGraded) -> Tuple[List[Subspace], Dict[str, bool]]:
    """Principal ideals I^k = (t^k) for k = 0..n+1, checked against gr(A)(-k)."""
    graded = associated_graded(mg.fa).algebra
    ideals, matches, dims_ok, module_ok = [], True, True, True
    for k in range(mg.n + 2):
        ideal = two_sided_ideal(mg.algebra, [mg.t_power(k)]) if k else Subspace.full(mg.dim)
        matches = matches and ideal == mg.expected_ideal(k)
        ideals.append(ideal)
    gr_dims: Dict[int, int] = {}
    for w in mg.fa.weights:
        gr_dims[w] = gr_dims.get(w, 0) + 1
    for k in range(mg.n + 1):
        layer: Dict[int, int] = {}
        for i, a in mg.entries:
            if mg.fa.weights[a] == i - k:
                layer[i] = layer.get(i, 0) + 1
        shifted = {w + k: count for w, count in gr_dims.items()}
        dims_ok = dims_ok and layer == shifted
        module_ok = module_ok and _layer_is_module(mg, graded, k, ideals[k + 1])
    checks = {
        "ideals_are_t_powers": matches,
        "top_ideal_zero": ideals[mg.n + 1].is_zero(),
        "layer_dims_match": dims_ok,
        "layer_module_structure": module_ok,
    }
    return ideals, checks


def _layer_is_module(mg: MicroGraded, graded: TruncatedAlgebra, k: int, next_ideal: Subspace) -> bool:
    """w -> t^k (wt w, w) is gr-linear modulo I^{k+1}."""
    weights = mg.fa.weights

    def embed(vector: Vector) -> Vector:
        return {mg.index[(weights[a] + k, a)]: coeff for a, coeff in vector.items()}

    for g in range(graded.dim):
        for w in range(graded.dim):
            if (g, w) in graded.overflow or weights[w] + weights[g] + k > mg.top_grade:
                continue
            left = embed(graded.mul_basis(g, w))
            right = mg.algebra.mul(unit_vector(mg.index[(weights[g], g)]), embed(unit_vector(w)))
            if not next_ideal.contains(vec_add(left, right, -1)):
                return False
    return True


def quotient_by_t(mg: MicroGraded) -> Dict[str, bool]:
    """Compare gr_(n)/(t) with gr(A) by dims per grade and by structure constants."""
    graded = associated_graded(mg.fa).algebra
    ideal = mg.expected_ideal(1)
    quotient, projection = quotient_by_ideal(mg.algebra, ideal)
    pivots = set(ideal.pivots)
    kept = [p for p in range(mg.dim) if p not in pivots]
    to_gr = {position: mg.entries[p][1] for position, p in enumerate(kept)}
    dims_ok = sorted(to_gr.values()) == list(range(graded.dim))
    constants_ok = True
    for p in range(quotient.dim):
        for q in range(quotient.dim):
            if (p, q) in quotient.overflow:
                continue
            mapped = {to_gr[key]: coeff for key, coeff in quotient.mul_basis(p, q).items()}
            if mapped != graded.mul_basis(to_gr[p], to_gr[q]):
                constants_ok = False
    return {"quotient_dims_match": dims_ok, "quotient_constants_match": constants_ok}


def grn_projection(big: MicroGraded, small: MicroGraded) -> Dict[str, object]:
    """gr_(n+1) -> gr_(n), (i, w) -> (i, w) when still a basis pair of gr_(n)."""
    images = [
        unit_vector(small.index[entry]) if entry in small.index else {} for entry in big.entries
    ]
    pair = is_algebra_map(big.algebra, small.algebra, images)
    surjective = Subspace.span(small.dim, images).rank == small.dim
    kernel_dim = len(kernel_of(images, small.dim))
    expected = sum(1 for i, a in big.entries if big.fa.weights[a] == i - big.n)
    return {
        "multiplicative": pair is None,
        "surjective": surjective,
        "kernel_dim": kernel_dim,
        "expected_kernel_dim": expected,
    }


def tensor_comparison(mg: MicroGraded) -> bool:
    """gr_(n)(A) against gr(A) tensor Q[t]/t^{n+1}, basis (i, w) -> w (x) t^(i - wt w)."""
    graded = associated_graded(mg.fa).algebra
    weights = mg.fa.weights
    for p, (i, a) in enumerate(mg.entries):
        for q, (j, b) in enumerate(mg.entries):
            if (p, q) in mg.algebra.overflow:
                continue
            power = (i - weights[a]) + (j - weights[b])
            expected = {}
            if power <= mg.n:
                expected = {
                    mg.index[(weights[c] + power, c)]: coeff
                    for c, coeff in graded.mul_basis(a, b).items()
                    if weights[c] + power <= mg.top_grade
                }
            if mg.algebra.mul_basis(p, q) != expected:
                return False
    return True


def homogenize(poly: NcPoly, weights: Sequence[int], t_index: int, weight: Optional[int] = None) -> NcPoly:
    """Pad every word with central t up to ``weight`` (default: the top weight of ``poly``)."""
    if poly.is_zero():
        return poly
    top = poly.weight(weights) if weight is None else weight
    terms = {}
    for word, coeff in poly.items():
        gap = top - sum(weights[letter] for letter in word)
        if gap < 0:
            raise DataValidationException(f"Element has weight above {top}")
        terms[word + (t_index,) * gap] = coeff
    return NcPoly(terms)


def rees_presentation(fa: FilteredAlgebra, n: int, bound: Optional[int] = None) -> Presentation:
    """Graded presentation of gr_(n)(A): relations homogenized by a central t with t^{n+1} = 0."""
    pres = fa.pres
    rank = len(pres.generators)
    t_name = fresh_name(pres.names, "t")
    weights = list(pres.weights) + [1]
    t = NcPoly.generator(rank)
    relations = [homogenize(relation, weights, rank) for relation in pres.relations]
    relations.extend(commutator_poly(t, NcPoly.generator(g)) for g in range(rank))
    relations.append(t ** (n + 1))
    relations = [relation for relation in relations if not relation.is_zero()]
    degree_bound = max([bound or pres.degree_bound] + [relation.degree for relation in relations])
    return Presentation(
        name=f"gr{n}({pres.name})",
        generators=tuple(pres.generators) + (Generator(name=t_name, weight=1),),
        relations=tuple(relations),
        degree_bound=degree_bound,
    )


def graded_piece(alg: TruncatedAlgebra, grade: int) -> TruncatedAlgebra:
    """The grade-``grade`` basis elements with the induced multiplication (grade 0 is a subalgebra)."""
    indices = alg.grade_indices(grade)
    position = {old: new for new, old in enumerate(indices)}
    table, overflow = {}, set()
    for a, i in enumerate(indices):
        for b, j in enumerate(indices):
            if (i, j) in alg.overflow:
                overflow.add((a, b))
                continue
            product = alg.mul_basis(i, j)
            if any(key not in position for key in product):
                raise NotFiltered(f"Grade {grade} is not closed under multiplication")
            if product:
                table[(a, b)] = {position[key]: coeff for key, coeff in product.items()}
    return TruncatedAlgebra(
        labels=[alg.labels[i] for i in indices],
        table=table,
        unit={position[key]: coeff for key, coeff in alg.unit.items()},
        degrees=[alg.degrees[i] for i in indices],
        bound=alg.bound,
        exact=alg.exact,
        overflow=frozenset(overflow),
        words=[alg.words[i] for i in indices] if alg.words is not None else None,
        grades=[grade] * len(indices),
    )


@dataclass
class Localization:
    rees: Presentation
    presentation: Presentation
    algebra: TruncatedAlgebra
    lift: NcPoly
    n: int
    t: Vector = field(default_factory=dict)
    v: Vector = field(default_factory=dict)
    numerator_bound: int = 0

    @property
    def degree_zero(self) -> TruncatedAlgebra:
        return graded_piece(self.algebra, 0)


def symbol_of(fa: FilteredAlgebra, f: NcPoly) -> Vector:
    vector = fa.algebra.vector_of(f, strict=False)
    if fa.weight_of(vector) > 1:
        raise DataValidationException("Localizing element must have filtration degree 1")
    return fa.top_component(vector, 1)


# (stage s, grade m, numerator a) stands for f^-s * a, with a of grade s + m
Fraction = Tuple[int, int, Vector]


class LeftFractions:
    """gr_(n)(A) localized at a grade-1 lift f, computed on left fractions f^-s * a.

    A numerator of grade i is an A-vector read modulo A_{i-n-1}. Moving a
    generator past f^-s uses g f^-s = sum_j C(s-1+j, j) f^(-s-j) ad_f^j(g),
    which stops at j = n since ad_f lands in t * gr_(n)(A).
    """

    def __init__(self, fa: FilteredAlgebra, n: int, lift: NcPoly):
        self.fa = fa
        self.n = n
        self.lift = self.truncate(fa.algebra.vector_of(lift, strict=False), 1)

    def truncate(self, vector: Vector, grade: int) -> Vector:
        weights = self.fa.weights
        return {key: coeff for key, coeff in vector.items() if weights[key] >= grade - self.n}

    def mul(self, left: Vector, right: Vector, grade: int) -> Vector:
        alg = self.fa.algebra
        length = max((alg.degrees[i] for i in left), default=0) + max(
            (alg.degrees[j] for j in right), default=0
        )
        if left and right and length > alg.bound:
            raise DegreeOverflow(f"Numerator of length {length} exceeds degree bound {alg.bound}")
        return self.truncate(alg.mul(left, right), grade)

    def bracket(self, vector: Vector, grade: int) -> Vector:
        """ad_f of a grade-``grade`` element."""
        return vec_add(
            self.mul(self.lift, vector, grade + 1), self.mul(vector, self.lift, grade + 1), -1
        )

    def push(self, vector: Vector, grade: int, times: int) -> Vector:
        for _ in range(times):
            grade += 1
            vector = self.mul(self.lift, vector, grade)
        return vector

    def unit(self) -> Fraction:
        return 0, 0, self.truncate(dict(self.fa.algebra.unit), 0)

    def invert(self, value: Fraction) -> Fraction:
        stage, grade, numerator = value
        return stage + 1, grade - 1, numerator

    def prepend(self, element: Vector, weight: int, value: Fraction) -> Fraction:
        """element * f^-s * a, for ``element`` of grade ``weight``."""
        stage, grade, numerator = value
        top = stage + grade
        if not stage or not self.bracket(element, weight):
            return stage, grade + weight, self.mul(element, numerator, top + weight)
        total: Vector = {}
        term, term_grade = element, weight
        for j in range(self.n + 1):
            if not term:
                break
            product = self.mul(term, numerator, term_grade + top)
            shifted = self.push(product, term_grade + top, self.n - j)
            total = vec_add(total, shifted, comb(stage - 1 + j, j))
            term = self.bracket(term, term_grade)
            term_grade += 1
        return stage + self.n, grade + weight, total

    def at_stage(self, value: Fraction, stage: int) -> Vector:
        old, grade, numerator = value
        return self.push(numerator, old + grade, stage - old)


def _letter_values(fractions: LeftFractions, rees: Presentation) -> List[Optional[Tuple[Vector, int]]]:
    """Numerators of the rees generators; the last letter, v, is None."""
    alg = fractions.fa.algebra
    rank = len(rees.generators)
    letters = []
    for g, weight in enumerate(rees.weights):
        if g == rank - 1:
            vector = dict(alg.unit)
        else:
            vector = alg.vector_of(NcPoly.generator(g), strict=False)
        letters.append((fractions.truncate(vector, weight), weight))
    letters.append(None)
    return letters


def _fraction_ideal(fractions: LeftFractions, words: Sequence[Word], letters) -> Subspace:
    """Kernel of the evaluation of words in the localization, one grade at a time."""
    values = []
    for word in words:
        value = fractions.unit()
        for letter in reversed(word):
            if letters[letter] is None:
                value = fractions.invert(value)
            else:
                value = fractions.prepend(*letters[letter], value)
        values.append(value)
    stages: Dict[int, int] = {}
    for stage, grade, _ in values:
        stages[grade] = max(stages.get(grade, 0), stage)
    vectors = []
    for grade, stage in sorted(stages.items()):
        members = [i for i, value in enumerate(values) if value[1] == grade]
        images = [fractions.at_stage(values[i], stage) for i in members]
        for vector in kernel_of(images, fractions.fa.algebra.dim):
            vectors.append({members[key]: coeff for key, coeff in vector.items()})
    return Subspace.span(len(words), vectors)


def _localization_ideal(
    fa: FilteredAlgebra, n: int, lift: NcPoly, pres: Presentation, rees: Presentation
) -> Tuple[List[Word], Dict[Word, int], Subspace, int]:
    words = words_up_to(len(pres.generators), pres.degree_bound)
    index = {word: i for i, word in enumerate(words)}
    bound = fa.pres.degree_bound + pres.degree_bound * max(lift.degree, 1)
    limit = bound + pres.degree_bound * (n + 1)
    while True:
        wide = FilteredAlgebra(fa.pres.with_bound(bound))
        fractions = LeftFractions(wide, n, lift)
        try:
            ideal = _fraction_ideal(fractions, words, _letter_values(fractions, rees))
            return words, index, ideal, bound
        except DegreeOverflow:
            if bound >= limit:
                raise
            logger.debug(f"Numerators overflow at bound {bound}, widening")
            bound += 1


def localize_deg0(
    mg: MicroGraded, f: NcPoly, lift: Optional[NcPoly] = None, bound: Optional[int] = None
) -> Localization:
    """Invert a lift of the degree-1 symbol f by a generator v of grade -1.

    Words of length <= D in the generators of gr_(n)(A) and v are taken modulo
    their kernel in the localization, so every product inside the bound is the
    true product.
    """
    fa = mg.fa
    symbol = symbol_of(fa, f)
    if not symbol:
        logger.error(f"Symbol of {f.format(fa.pres.names)} vanishes in gr_1")
        raise ZeroSymbol(f"Symbol of {f.format(fa.pres.names)} vanishes in gr_1")
    lift = lift if lift is not None else f
    if symbol_of(fa, lift) != symbol:
        raise DataValidationException("Lift does not map to the given symbol")

    rees = rees_presentation(fa, mg.n, bound)
    rank = len(rees.generators)
    rees_weights = list(rees.weights)
    lifted = homogenize(lift, rees_weights, rank - 1, weight=1)
    v = NcPoly.generator(rank)
    relations = list(rees.relations) + [v * lifted - 1, lifted * v - 1]
    for g in range(rank):
        generator = NcPoly.generator(g)
        bracket = normal_form(commutator_poly(lifted, generator), rees, truncate=True)
        relations.append(v * generator - generator * v + v * bracket * v)
    relations = [relation for relation in relations if not relation.is_zero()]
    degree_bound = max([rees.degree_bound] + [relation.degree for relation in relations])
    v_name = fresh_name(rees.names, "v")
    pres = Presentation(
        name=f"{rees.name}_loc",
        generators=tuple(rees.generators) + (Generator(name=v_name, weight=0),),
        relations=tuple(relations),
        degree_bound=degree_bound,
    )

    words, index, ideal, numerator_bound = _localization_ideal(fa, mg.n, lift, pres, rees)
    for relation in relations:
        vector = {index[word]: coeff for word, coeff in relation.items()}
        if not ideal.contains(vector):
            logger.error(f"Relation {relation.format(pres.names)} fails among fractions")
            raise HypothesisFailure(
                f"Relation {relation.format(pres.names)} fails among fractions; "
                f"the lift is a zero divisor below bound {numerator_bound}"
            )
    algebra = truncated_from_ideal(pres, words, index, ideal, grades=rees_weights + [-1])
    logger.info(
        f"Localized {fa.pres.name} at level {mg.n}: dimension {algebra.dim}, numerators up to {numerator_bound}"
    )
    return Localization(
        rees=rees,
        presentation=pres,
        algebra=algebra,
        lift=lifted,
        n=mg.n,
        t=algebra.generator_images[rank - 1],
        v=algebra.generator_images[rank],
        numerator_bound=numerator_bound,
    )


def _series_images(loc: Localization, other: NcPoly) -> List[Vector]:
    """Generators fixed; v -> sum_k (-v * delta)^k v, k <= n, inverting other = lift + delta.

    delta is divisible by the central nilpotent t, so the series stops at k = n.
    """
    alg = loc.algebra
    images = [dict(image) for image in alg.generator_images]
    delta = alg.vector_of(other - loc.lift, strict=True)
    step = vec_scale(alg.mul(loc.v, delta, strict=True), -1)
    term, total = dict(loc.v), dict(loc.v)
    for _ in range(loc.n):
        term = alg.mul(step, term, strict=True)
        total = vec_add(total, term)
    images[-1] = total
    return images


def _basis_images(source: Localization, target: Localization, images: Sequence[Vector]) -> List[Optional[Vector]]:
    result = []
    for word in source.algebra.words:
        try:
            result.append(target.algebra.evaluate(NcPoly({word: QQ(1)}), images, strict=True))
        except DegreeOverflow:
            result.append(None)
    return result


def lift_independence(first: Localization, second: Localization) -> Dict[str, object]:
    """Comparison maps between the localizations at two lifts of the same symbol.

    Each map fixes the generators of gr_(n)(A) and sends v to the series
    inverting the other lift. It is checked on the relations of its source and
    on the products of basis pairs, and composed with the reverse map on
    generators. Instances that leave a degree bound are skipped and counted.
    """
    checked, skipped, failures = 0, 0, 0
    maps = []
    for target, other in ((first, second.lift), (second, first.lift)):
        try:
            maps.append(_series_images(target, other))
        except DegreeOverflow:
            maps.append(None)
    forward, backward = maps  # second -> first, first -> second

    for source, target, images in ((second, first, forward), (first, second, backward)):
        if images is None:
            skipped += len(source.presentation.relations)
            continue
        for relation in source.presentation.relations:
            try:
                value = target.algebra.evaluate(relation, images, strict=True)
            except DegreeOverflow:
                skipped += 1
                continue
            checked += 1
            failures += bool(value)

        alg = source.algebra
        basis_images = _basis_images(source, target, images)
        for a in range(alg.dim):
            for b in range(alg.dim):
                if (a, b) in alg.overflow:
                    continue
                product = alg.mul_basis(a, b)
                parts = [basis_images[c] for c in product]
                if basis_images[a] is None or basis_images[b] is None or None in parts:
                    skipped += 1
                    continue
                try:
                    expected = target.algebra.mul(basis_images[a], basis_images[b], strict=True)
                except DegreeOverflow:
                    skipped += 1
                    continue
                value: Vector = {}
                for c, coeff in product.items():
                    value = vec_add(value, basis_images[c], coeff)
                checked += 1
                failures += value != expected

    for source, target, there, back in ((second, first, forward, backward), (first, second, backward, forward)):
        if there is None or back is None:
            skipped += len(source.presentation.generators)
            continue
        for g, image in enumerate(there):
            try:
                polys = target.algebra.poly_of(image)
                round_trip = source.algebra.evaluate(polys, back, strict=True)
            except DegreeOverflow:
                skipped += 1
                continue
            checked += 1
            failures += round_trip != source.algebra.generator_images[g]
    return {
        "checked": checked,
        "skipped": skipped,
        "failures": failures,
        "degree_zero_dims": [first.degree_zero.dim, second.degree_zero.dim],
    }


def shift_piece(alg: TruncatedAlgebra, m: int) -> List[int]:
    """O(m)_0: basis indices of grade m."""
    return alg.grade_indices(m)


def shift_bimodule(loc: Localization, m: int) -> Dict[str, object]:
    """Checks on O(m) = L(m): multiplication maps, t-maps, and O(1) (x) O(-1) -> O(0)."""
    alg = loc.algebra
    pieces = {k: shift_piece(alg, k) for k in (m, -m, 0)}
    associative, t_commutes = True, True
    for a in pieces[m]:
        for b in pieces[-m]:
            try:
                ab = alg.mul_basis(a, b, strict=True)
                t_left = alg.mul(alg.mul(loc.t, unit_vector(a), True), unit_vector(b), True)
                t_right = alg.mul(unit_vector(a), alg.mul(loc.t, unit_vector(b), True), True)
                t_commutes = t_commutes and alg.mul(loc.t, ab, True) == t_left == t_right
            except DegreeOverflow:
                continue
            for c in pieces[m]:
                try:
                    left = alg.mul(ab, unit_vector(c), True)
                    right = alg.mul(unit_vector(a), alg.mul_basis(b, c, True), True)
                except DegreeOverflow:
                    continue
                associative = associative and left == right
    lift_vector = alg.vector_of(loc.lift, strict=False)
    canonical = alg.mul(lift_vector, loc.v) == alg.unit
    return {
        "piece_dims": {str(k): len(v) for k, v in sorted(pieces.items())},
        "associative": associative,
        "t_maps_commute": t_commutes,
        "canonical_action": canonical,
        "is_algebra": m != 0 or len(pieces[0]) == loc.degree_zero.dim,
    }


def t_tower(loc: Localization, order: int) -> Dict[str, object]:
    """Maps O(m)_0 -> O(m+1)_0 by t, and the image filtration t^k O(0)_0, k <= order."""
    alg = loc.algebra
    dims, ranks = {}, {}
    for m in range(-order, order + 1):
        piece = shift_piece(alg, m)
        dims[str(m)] = len(piece)
        images = [alg.mul(loc.t, unit_vector(a)) for a in piece]
        ranks[str(m)] = Subspace.span(alg.dim, images).rank
    powers = []
    current = [unit_vector(a) for a in shift_piece(alg, 0)]
    for _ in range(order + 1):
        powers.append(Subspace.span(alg.dim, current).rank)
        current = [alg.mul(loc.t, vector) for vector in current]
    return {"piece_dims": dims, "t_ranks": ranks, "image_ranks": powers, "limit_dim": powers[-1]}


@dataclass
class TAdicModule:
    """Left submodule of algebra^rank generated by ``generators``."""

    algebra: TruncatedAlgebra
    t: Vector
    rank: int
    generators: List[List[Vector]]
    seed: int = 0


@dataclass(frozen=True)
class RankOneResult:
    free: bool
    generator: Optional[Tuple[Vector, ...]]
    module_dim: int
    residue_dim: int
    quotient_dim: int
    witness: Optional[str] = None


def rank_one_criterion(module: TAdicModule) -> RankOneResult:
    alg, t, k = module.algebra, module.t, module.rank
    n = alg.dim

    def flatten(components: Sequence[Vector]) -> Vector:
        result: Vector = {}
        for c, component in enumerate(components):
            result.update({c * n + key: coeff for key, coeff in component.items()})
        return result

    def act(a: Vector, element: Vector) -> Vector:
        result: Vector = {}
        for key, coeff in element.items():
            c, j = divmod(key, n)
            product = alg.mul(a, unit_vector(j))
            result = vec_add(result, {c * n + i: v for i, v in product.items()}, coeff)
        return result

    order = 1
    power = dict(t)
    while power and order <= n + 1:
        power = alg.mul(power, t)
        order += 1
    if power:
        raise HypothesisFailure("t is not nilpotent at this truncation")
    top = Subspace.span(n, [alg.mul(alg.power(t, order - 1), unit_vector(a)) for a in range(n)])

    left_ideal = Subspace.span(n, [alg.mul(t, unit_vector(a)) for a in range(n)])
    right_ideal = Subspace.span(n, [alg.mul(unit_vector(a), t) for a in range(n)])
    if left_ideal != right_ideal:
        raise HypothesisFailure("At differs from tA")
    for element in kernel_of(alg.left_multiplication(t), n):
        if not top.contains(element):
            raise HypothesisFailure("t is a zero divisor on A below the truncation order")

    generators = [flatten(g) for g in module.generators]
    submodule = Subspace.span(
        k * n, [act(unit_vector(a), g) for a in range(n) for g in generators]
    )
    top_k = Subspace.span(
        k * n, [{c * n + key: coeff for key, coeff in row.items()} for row in top.rows for c in range(k)]
    )
    t_images = [act(t, row) for row in submodule.rows]
    for combination in kernel_of(t_images, k * n):
        element = apply_linear(list(submodule.rows), combination)
        if not top_k.contains(element):
            raise HypothesisFailure("t is a zero divisor on M below the truncation order")

    t_module = Subspace.span(k * n, t_images)
    quotient_dim = submodule.rank - t_module.rank
    residue_dim = n - left_ideal.rank
    if quotient_dim != residue_dim:
        return RankOneResult(False, None, submodule.rank, residue_dim, quotient_dim, "M/tM has the wrong dimension")

    rng = random.Random(module.seed)
    candidates = list(generators)
    for _ in range(3):
        combination: Vector = {}
        for row in submodule.rows:
            combination = vec_add(combination, row, rng.randint(-2, 2))
        candidates.append(combination)
    witness = "no candidate generates M/tM"
    for candidate in candidates:
        images = [act(unit_vector(a), candidate) for a in range(n)]
        if (t_module + Subspace.span(k * n, images)).rank != submodule.rank:
            continue
        if kernel_of(images, k * n):
            witness = "a -> a*g is not injective"
            continue
        generator = tuple(
            {key - c * n: coeff for key, coeff in candidate.items() if key // n == c} for c in range(k)
        )
        return RankOneResult(True, generator, submodule.rank, residue_dim, quotient_dim)
    return RankOneResult(False, None, submodule.rank, residue_dim, quotient_dim, witness)
