"""Central extensions, standard étale extensions and their lifting problems."""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from engines.algebra_engines import (
    TruncatedAlgebra,
    associativity_failures,
    build_truncated,
    generated_subalgebra,
    is_algebra_map,
    product_algebra,
    tensor_algebra,
    tensor_vector,
    word_ideal,
)
from engines.filtration_engines import (
    abelianization,
    nc_filtration,
    quotient_rd,
    quotient_rd_with_projection,
)
from engines.linalg_engines import (
    Subspace,
    Vector,
    apply_linear,
    kernel_of,
    solve_affine,
    to_qq,
    unit_vector,
    vec_add,
    vec_scale,
)
from engines.ncpoly_engines import NcPoly, commutator_poly
from exceptions import (
    DataValidationException,
    DegreeOverflow,
    InconsistentPresentation,
    LiftInconsistent,
    NotCentralExtension,
    PreimageMismatch,
    UnknownGenerator,
)
from schemas.presentation_schemas import Generator, Presentation, fresh_name

logger = logging.getLogger(__name__)


class AlgebraMorphism:
    """Map from a presented algebra, given by the images of its generators."""

    def __init__(
        self,
        source: Presentation,
        target: TruncatedAlgebra,
        images: Sequence[Vector],
        polys: Optional[Sequence[NcPoly]] = None,
    ):
        if len(images) != len(source.generators):
            raise DataValidationException(
                f"Morphism from {source.name} needs {len(source.generators)} images, got {len(images)}"
            )
        self.source = source
        self.target = target
        self.images = tuple(dict(image) for image in images)
        self.polys = tuple(polys) if polys is not None else None

    @classmethod
    def from_polys(cls, source: Presentation, target: TruncatedAlgebra, polys: Sequence[NcPoly]):
        return cls(source, target, [target.vector_of(p, strict=False) for p in polys], polys)

    @classmethod
    def inclusion(cls, source: Presentation, target: TruncatedAlgebra):
        """Generator i of the source goes to generator i of the target."""
        return cls.from_polys(
            source, target, [NcPoly.generator(i) for i in range(len(source.generators))]
        )

    def poly_image(self, i: int) -> NcPoly:
        if self.polys is not None:
            return self.polys[i]
        return self.target.poly_of(self.images[i])

    def apply(self, poly: NcPoly, strict: bool = False) -> Vector:
        return self.target.evaluate(poly, self.images, strict)

    def relation_failures(self) -> Tuple[List[int], int]:
        """Indices of source relations not sent to zero, and the number skipped on overflow."""
        failures, skipped = [], 0
        for r, relation in enumerate(self.source.relations):
            try:
                if self.apply(relation, strict=True):
                    failures.append(r)
            except DegreeOverflow:
                skipped += 1
        return failures, skipped


class CentralExtension:
    def __init__(
        self,
        total: TruncatedAlgebra,
        quotient: TruncatedAlgebra,
        projection: Sequence[Vector],
        section: Optional[Sequence[Vector]] = None,
    ):
        self.total = total
        self.quotient = quotient
        self.projection = [dict(v) for v in projection]
        self.section = [dict(v) for v in section] if section is not None else None
        self.kernel = Subspace.span(total.dim, kernel_of(self.projection, quotient.dim))

    @classmethod
    def from_morphism(cls, total: TruncatedAlgebra, gamma: AlgebraMorphism) -> "CentralExtension":
        if total.words is None:
            raise DataValidationException("Extension total space must be presented")
        projection = [gamma.apply(NcPoly.monomial(word)) for word in total.words]
        return cls(total, gamma.target, projection)

    def project(self, vector: Vector) -> Vector:
        return apply_linear(self.projection, vector)

    def lift(self, vector: Vector) -> Vector:
        if self.section is not None:
            return apply_linear(self.section, vector)
        return self.preimage(vector)

    def preimage(self, vector: Vector) -> Vector:
        equations: List[Vector] = [dict() for _ in range(self.quotient.dim)]
        for j, image in enumerate(self.projection):
            for i, coeff in image.items():
                equations[i][j] = coeff
        rhs = [vector.get(i, 0) for i in range(self.quotient.dim)]
        solution = solve_affine(equations, rhs, self.total.dim)
        if not solution.consistent:
            raise PreimageMismatch("Element has no preimage under the extension map")
        return solution.particular

    def failures(self) -> List[str]:
        failures = []
        pair = is_algebra_map(self.total, self.quotient, self.projection)
        if pair is not None:
            failures.append(f"projection is not multiplicative on basis pair {pair}")
        if Subspace.span(self.quotient.dim, self.projection).rank != self.quotient.dim:
            failures.append("projection is not surjective")
        for row in self.kernel.rows:
            if any(self.total.commutator(row, unit_vector(a)) for a in range(self.total.dim)):
                failures.append("kernel is not central")
                break
        for left in self.kernel.rows:
            if any(self.total.mul(left, right) for right in self.kernel.rows):
                failures.append("kernel does not square to zero")
                break
        triple = associativity_failures(self.total)
        if triple:
            failures.append(f"total space is not associative on basis triple {triple[0]}")
        return failures

    def verify(self) -> None:
        failures = self.failures()
        if failures:
            logger.error(f"Not a central extension: {failures[0]}")
            raise NotCentralExtension(failures[0])


def square_zero_extension(
    base: TruncatedAlgebra, copies: int = 1, twist: Optional[Sequence[Vector]] = None
) -> CentralExtension:
    """A' = base + M with M = (base^ab)^copies, multiplied through the coboundary of ``twist``.

    ``twist[i]`` is h(e_i) in module coordinates; h(1) must vanish. The section
    a -> (a, h(a)) is multiplicative.
    """
    ab, pi = quotient_rd_with_projection(base, 0)
    n, k = base.dim, ab.dim
    twist = [dict(v) for v in twist] if twist is not None else [{} for _ in range(n)]
    if apply_linear(twist, base.unit):
        raise DataValidationException("Twist must vanish on the unit")

    def shift(module_vector: Vector) -> Vector:
        return {n + key: coeff for key, coeff in module_vector.items()}

    # action through the abelianization, in module coordinates
    def act(ab_vector: Vector, module_vector: Vector) -> Vector:
        result: Vector = {}
        for key, coeff in module_vector.items():
            copy, j = divmod(key, k)
            product = ab.mul(ab_vector, unit_vector(j))
            result = vec_add(result, {copy * k + m: c for m, c in product.items()}, coeff)
        return result

    table = {}
    for i in range(n):
        for j in range(n):
            product = base.mul_basis(i, j)
            defect = vec_add(
                apply_linear(twist, product),
                vec_add(act(pi[i], twist[j]), act(pi[j], twist[i])),
                -1,
            )
            value = vec_add(product, shift(defect))
            if value:
                table[(i, j)] = value
        for copy in range(copies):
            for j in range(k):
                value = shift(act(pi[i], {copy * k + j: QQ(1)}))
                if value:
                    table[(i, n + copy * k + j)] = value
                    table[(n + copy * k + j, i)] = value

    labels = list(base.labels)
    degrees = list(base.degrees)
    for copy in range(copies):
        labels.extend(f"m{copy}:{label}" for label in ab.labels)
        degrees.extend(ab.degrees)
    total = TruncatedAlgebra(
        labels=labels,
        table=table,
        unit=base.unit,
        degrees=degrees,
        bound=base.bound,
        exact=base.exact,
        overflow=base.overflow,
    )
    projection = [unit_vector(i) for i in range(n)] + [{} for _ in range(copies * k)]
    section = [vec_add(unit_vector(i), shift(twist[i])) for i in range(n)]
    return CentralExtension(total, base, projection, section)


@dataclass
class EtaleDiagram:
    alpha: AlgebraMorphism
    beta: AlgebraMorphism
    delta: AlgebraMorphism
    extension: CentralExtension
    # chosen preimages under gamma of beta(s), keyed by S-generator index
    preimages: Dict[int, Vector] = field(default_factory=dict)
    coefficients: Optional[Tuple[NcPoly, ...]] = None
    label: str = ""

    @property
    def source(self) -> Presentation:
        return self.alpha.source

    @property
    def etale(self) -> Presentation:
        return self.beta.source

    def commutation_failures(self) -> List[int]:
        failures = []
        for r in range(len(self.source.generators)):
            left = self.extension.project(self.delta.images[r])
            right = self.beta.apply(self.alpha.poly_image(r))
            if left != right:
                failures.append(r)
        return failures


@dataclass(frozen=True)
class LiftSolution:
    commutes: bool
    exists: bool
    nullity: int
    images: Optional[Tuple[Vector, ...]] = None
    witness: Optional[str] = None
    skipped: int = 0

    @property
    def unique(self) -> bool:
        return self.exists and self.nullity == 0


def _linearize(alg: TruncatedAlgebra, poly: NcPoly, base: Sequence[Vector], corrections: Sequence[Vector]):
    """Value at ``base`` and the coefficient vectors of every correction unknown.

    Corrections are central and square to zero, so a correction c at position j
    of a word contributes (product of the other letters) * c.
    """
    value = alg.evaluate(poly, base, strict=True)
    columns: Dict[Tuple[int, int], Vector] = {}
    for word, coeff in poly.items():
        for position, letter in enumerate(word):
            others = dict(alg.unit)
            for other in word[:position] + word[position + 1:]:
                others = alg.mul(others, base[other], strict=True)
            if not others:
                continue
            for k, correction in enumerate(corrections):
                key = (letter, k)
                columns[key] = vec_add(columns.get(key, {}), alg.mul(others, correction, strict=True), coeff)
    return value, columns


def solve_lifts(diagram: EtaleDiagram) -> LiftSolution:
    """All morphisms S -> A' lifting beta and extending delta, as an affine space over I."""
    failures = diagram.commutation_failures()
    if failures:
        name = diagram.source.names[failures[0]]
        return LiftSolution(False, False, 0, witness=f"diagram does not commute on {name}")

    extension = diagram.extension
    total = extension.total
    etale = diagram.etale
    base: List[Vector] = []
    for s in range(len(etale.generators)):
        if s in diagram.preimages:
            base.append(diagram.preimages[s])
        else:
            base.append(extension.lift(diagram.beta.images[s]))
    corrections = list(extension.kernel.rows)
    width = len(corrections)

    constraints: List[Tuple[NcPoly, Vector]] = [(relation, {}) for relation in etale.relations]
    constraints.extend(
        (diagram.alpha.poly_image(r), diagram.delta.images[r]) for r in range(len(diagram.source.generators))
    )
    rows: Dict[int, Vector] = {}
    rhs: Dict[int, object] = {}
    skipped, offset = 0, 0
    for poly, target in constraints:
        try:
            value, columns = _linearize(total, poly, base, corrections)
        except DegreeOverflow:
            skipped += 1
            continue
        value = vec_add(value, target, -1)
        touched = set(value)
        for vector in columns.values():
            touched.update(vector)
        for coordinate in touched:
            row = {
                s * width + k: vector[coordinate]
                for (s, k), vector in columns.items()
                if coordinate in vector
            }
            rows[offset + coordinate] = row
            rhs[offset + coordinate] = -value.get(coordinate, 0)
        offset += total.dim

    keys = sorted(rows)
    solution = solve_affine([rows[key] for key in keys], [rhs[key] for key in keys], len(base) * width)
    if not solution.consistent:
        return LiftSolution(True, False, 0, witness="lifting system is inconsistent", skipped=skipped)
    images = []
    for s, image in enumerate(base):
        for k, correction in enumerate(corrections):
            coeff = solution.particular.get(s * width + k)
            if coeff:
                image = vec_add(image, correction, coeff)
        images.append(image)
    return LiftSolution(True, True, solution.nullity, tuple(images), skipped=skipped)


def check_formally_etale(diagrams: Sequence[EtaleDiagram]) -> Tuple[bool, List[LiftSolution]]:
    solutions = [solve_lifts(diagram) for diagram in diagrams]
    return all(solution.unique for solution in solutions), solutions


def standard_etale(
    base: Presentation, coefficients: Sequence[NcPoly], names: Optional[Tuple[str, str]] = None
) -> Presentation:
    """Adjoin a root z of sum a_i z^i and a two-sided inverse u of its derivative."""
    if len(coefficients) < 2:
        raise DataValidationException("Standard étale extension needs coefficients a_0..a_n with n >= 1")
    rank = len(base.generators)
    for a in coefficients:
        if any(letter >= rank for letter in a.generators_used()):
            raise UnknownGenerator(f"Coefficient {a} uses generators outside {base.name}")
    z_name = names[0] if names else fresh_name(base.names, "z")
    u_name = names[1] if names else fresh_name(base.names + [z_name], "u")
    z, u = NcPoly.generator(rank), NcPoly.generator(rank + 1)

    polynomial = NcPoly()
    derivative = NcPoly()
    for i, a in enumerate(coefficients):
        polynomial = polynomial + a * z ** i
        if i:
            derivative = derivative + i * a * z ** (i - 1)
    relations = tuple(base.relations) + (polynomial, u * derivative - 1, derivative * u - 1)
    relations = tuple(relation for relation in relations if not relation.is_zero())
    return Presentation(
        name=f"{base.name}[{z_name},{u_name}]",
        generators=tuple(base.generators) + (Generator(name=z_name), Generator(name=u_name)),
        relations=relations,
        degree_bound=max([base.degree_bound] + [relation.degree for relation in relations]),
    )


def compose_standard(
    base: Presentation, first: Sequence[NcPoly], second: Sequence[NcPoly]
) -> Presentation:
    """Standard étale extension by ``second`` (polys over the first extension) of the one by ``first``."""
    return standard_etale(standard_etale(base, first), second)


@dataclass(frozen=True)
class StandardLift:
    p: Vector
    q: Vector
    epsilon: AlgebraMorphism
    relation_failures: Tuple[int, ...]
    in_kernel: bool
    nullity: int

    @property
    def valid(self) -> bool:
        return not self.relation_failures and self.in_kernel


def lift_standard(diagram: EtaleDiagram) -> StandardLift:
    """Closed-form lift p = -y*sum d(a_i) x^i, q = y*(1 - sum i d(a_i) (x+p)^(i-1) y)."""
    extension = diagram.extension
    extension.verify()
    if diagram.coefficients is None:
        raise DataValidationException("Diagram does not carry standard étale coefficients")
    total = extension.total
    etale = diagram.etale
    z_index, u_index = len(etale.generators) - 2, len(etale.generators) - 1
    x = diagram.preimages.get(z_index)
    y = diagram.preimages.get(u_index)
    if x is None or y is None:
        raise DataValidationException("Diagram does not choose preimages x and y")
    if extension.project(x) != diagram.beta.images[z_index]:
        raise PreimageMismatch("gamma(x) differs from beta(z)")
    if extension.project(y) != diagram.beta.images[u_index]:
        raise PreimageMismatch("gamma(y) differs from beta(u)")

    lifted = [diagram.delta.apply(a) for a in diagram.coefficients]
    polynomial: Vector = {}
    for i, a in enumerate(lifted):
        polynomial = vec_add(polynomial, total.mul(a, total.power(x, i)))
    p = vec_scale(total.mul(y, polynomial), -1)

    shifted = vec_add(x, p)
    derivative: Vector = {}
    for i, a in enumerate(lifted):
        if i:
            derivative = vec_add(derivative, total.mul(a, total.power(shifted, i - 1)), i)
    q = total.mul(y, vec_add(total.unit, total.mul(derivative, y), -1))

    images = list(diagram.delta.images) + [shifted, vec_add(y, q)]
    epsilon = AlgebraMorphism(etale, total, images)
    failures, _ = epsilon.relation_failures()
    in_kernel = extension.kernel.contains(p) and extension.kernel.contains(q)
    nullity = solve_lifts(diagram).nullity
    logger.debug(f"Standard lift {diagram.label}: relation failures {failures}, nullity {nullity}")
    return StandardLift(p, q, epsilon, tuple(failures), in_kernel, nullity)


@dataclass(frozen=True)
class FamilyFactor:
    """One factor of a family target: an algebra, images of the R-generators and a point of S."""

    algebra: TruncatedAlgebra
    base_images: Tuple[Vector, ...]
    point: Dict[str, object]


def ambient_factor(factor: FamilyFactor, d: int) -> FamilyFactor:
    """factor (x) T with T free on two generators at bound d + 2, a factor outside N_d.

    R-generators and points map through a -> a (x) 1.
    """
    free = build_truncated(
        Presentation(
            name=f"T{d + 2}",
            generators=(Generator(name="p"), Generator(name="q")),
            degree_bound=d + 2,
        )
    )
    algebra = tensor_algebra(factor.algebra, free)
    return FamilyFactor(
        algebra=algebra,
        base_images=tuple(tensor_vector(image, free.unit, free.dim) for image in factor.base_images),
        point=dict(factor.point),
    )


def _random_vector(rng: random.Random, coordinates: Sequence[int], density: float = 0.4) -> Vector:
    vector: Vector = {}
    for coordinate in coordinates:
        if rng.random() < density:
            value = rng.randint(-2, 2)
            if value:
                vector[coordinate] = QQ(value)
    return vector


def generate_family(
    alpha: AlgebraMorphism,
    factors: Sequence[FamilyFactor],
    count: int,
    seed: int,
    coefficients: Optional[Sequence[NcPoly]] = None,
) -> List[EtaleDiagram]:
    """Seeded diagrams over A = prod factors with split square-zero extensions A' -> A."""
    source, etale = alpha.source, alpha.target.presentation
    algebras = [factor.algebra for factor in factors]
    target = product_algebra(algebras)
    offsets = [sum(a.dim for a in algebras[:k]) for k in range(len(algebras))]

    def diagonal(parts: Sequence[Vector]) -> Vector:
        result: Vector = {}
        for offset, part in zip(offsets, parts):
            result.update({key + offset: coeff for key, coeff in part.items()})
        return result

    beta_images = []
    for s, name in enumerate(etale.names):
        if s < len(source.generators):
            beta_images.append(diagonal([factor.base_images[s] for factor in factors]))
        else:
            beta_images.append(
                diagonal(
                    [vec_scale(f.algebra.unit, to_qq(f.point.get(name, 0))) for f in factors]
                )
            )
    beta = AlgebraMorphism(etale, target, beta_images)
    failures, _ = beta.relation_failures()
    if failures:
        logger.error(f"Family points do not satisfy relation {failures[0]} of {etale.name}")
        raise DataValidationException(f"Family points do not satisfy relation {failures[0]} of {etale.name}")

    graded = [i for i in range(target.dim) if target.degrees[i] > 0]
    diagrams = []
    for index in range(count):
        rng = random.Random(seed * 100003 + index)
        copies = rng.choice([1, 2])
        module_dim = copies * abelianization(target).dim
        twist = [{} for _ in range(target.dim)]
        for i in graded:
            twist[i] = _random_vector(rng, range(module_dim), density=0.3)
        extension = square_zero_extension(target, copies, twist)
        delta_images = [
            extension.lift(beta.apply(alpha.poly_image(r))) for r in range(len(source.generators))
        ]
        delta = AlgebraMorphism(source, extension.total, delta_images)
        kernel = extension.kernel.rows
        preimages = {}
        for s in range(len(source.generators), len(etale.generators)):
            noise: Vector = {}
            for row in kernel:
                noise = vec_add(noise, row, rng.randint(-1, 1))
            preimages[s] = vec_add(extension.lift(beta.images[s]), noise)
        diagrams.append(
            EtaleDiagram(
                alpha=alpha,
                beta=beta,
                delta=delta,
                extension=extension,
                preimages=preimages,
                coefficients=tuple(coefficients) if coefficients is not None else None,
                label=f"seed={seed} index={index} copies={copies}",
            )
        )
    logger.info(f"Generated {len(diagrams)} diagrams over a target of dimension {target.dim}")
    return diagrams


def nd_closure_check(diagram: EtaleDiagram, d: int) -> Dict[str, object]:
    target = diagram.extension.quotient
    subalgebra = generated_subalgebra(target, diagram.beta.images)
    filtration = nc_filtration(diagram.extension.total, d + 1)
    return {
        "beta_surjective": subalgebra.rank == target.dim,
        "filtration_dim": filtration.rank,
        "in_nd": filtration.is_zero(),
    }


class CentralModule:
    """Finite-dimensional module over the abelianization: commuting operators per generator.

    ``actions[g]`` lists the images of the basis vectors under generator g.
    """

    def __init__(self, dim: int, actions: Sequence[Sequence[Vector]]):
        self.dim = dim
        self.actions = [[dict(column) for column in action] for action in actions]

    @classmethod
    def from_rows(cls, dim: int, matrices: Sequence[Sequence[Sequence]]) -> "CentralModule":
        actions = []
        for matrix in matrices:
            columns = [dict() for _ in range(dim)]
            for i, row in enumerate(matrix):
                for j, entry in enumerate(row):
                    value = to_qq(entry)
                    if value:
                        columns[j][i] = value
            actions.append(columns)
        return cls(dim, actions)

    def identity(self) -> List[Vector]:
        return [unit_vector(i) for i in range(self.dim)]

    def word(self, word: Sequence[int]) -> List[Vector]:
        result = self.identity()
        for letter in word:
            result = [apply_linear(self.actions[letter], column) for column in result]
        return result

    def poly(self, poly: NcPoly) -> List[Vector]:
        result = [dict() for _ in range(self.dim)]
        for word, coeff in poly.items():
            columns = self.word(word)
            result = [vec_add(acc, column, coeff) for acc, column in zip(result, columns)]
        return result

    def pullback(self, polys: Sequence[NcPoly]) -> "CentralModule":
        return CentralModule(self.dim, [self.poly(p) for p in polys])

    def failures(self, pres: Presentation) -> List[str]:
        failures = []
        for a in range(len(self.actions)):
            for b in range(a + 1, len(self.actions)):
                if self.word((a, b)) != self.word((b, a)):
                    failures.append(f"actions of {pres.names[a]} and {pres.names[b]} do not commute")
        for r, relation in enumerate(pres.relations):
            if any(self.poly(relation)):
                failures.append(f"relation {r} does not act by zero")
        return failures


def derivation_space(pres: Presentation, module: CentralModule) -> Tuple[Vector, ...]:
    """Kernel of the Leibniz constraints on generator images D(s) in M."""
    m, rank = module.dim, len(pres.generators)
    equations = []
    for relation in pres.relations:
        rows = [dict() for _ in range(m)]
        for word, coeff in relation.items():
            for position, letter in enumerate(word):
                action = module.word(word[:position] + word[position + 1:])
                for l, column in enumerate(action):
                    for i, value in column.items():
                        key = letter * m + l
                        rows[i][key] = rows[i].get(key, 0) + coeff * value
        equations.extend(rows)
    return solve_affine(equations, [0] * len(equations), rank * m).kernel


def derivation_transfer_check(
    alpha: AlgebraMorphism, module: CentralModule
) -> Dict[str, object]:
    """Dims of Der(S, M), Der(R, M) and whether restriction along alpha is bijective."""
    source, etale = alpha.source, alpha.target.presentation
    failures = module.failures(etale)
    if failures:
        raise DataValidationException(failures[0])
    restricted = module.pullback([alpha.poly_image(r) for r in range(len(source.generators))])
    m = module.dim
    der_s = derivation_space(etale, module)
    der_r = derivation_space(source, restricted)

    images = []
    for derivation in der_s:
        image: Vector = {}
        for r in range(len(source.generators)):
            for word, coeff in alpha.poly_image(r).items():
                for position, letter in enumerate(word):
                    action = module.word(word[:position] + word[position + 1:])
                    value = {l: derivation.get(letter * m + l, 0) for l in range(m)}
                    moved = apply_linear(action, {k: v for k, v in value.items() if v})
                    image = vec_add(image, {r * m + i: c for i, c in moved.items()}, coeff)
        images.append(image)
    rank = Subspace.span(len(source.generators) * m, images).rank
    in_der_r = all(Subspace.span(len(source.generators) * m, der_r).contains(image) for image in images)
    return {
        "der_s": len(der_s),
        "der_r": len(der_r),
        "restriction_rank": rank,
        "bijective": in_der_r and rank == len(der_s) == len(der_r),
    }


def topological_invariance_harness(
    pres: Presentation, coefficients: Sequence[NcPoly], d: int
) -> Dict[str, object]:
    """Lift a commutative standard étale extension of r_0(X) to X and compare."""
    algebra = build_truncated(pres)
    x_in_nd = nc_filtration(algebra, d + 1).is_zero()
    commutative_base = abelianization(algebra).presentation
    lifted_pres = standard_etale(pres, coefficients)
    try:
        lifted = build_truncated(lifted_pres)
    except InconsistentPresentation as exc:
        logger.error(f"Lift of {pres.name} collapses: {exc.message}")
        raise LiftInconsistent(f"Lifted presentation {lifted_pres.name} collapses")
    lifted_rd = quotient_rd(lifted, d)
    lift_in_nd = nc_filtration(lifted_rd, d + 1).is_zero()

    commutative = standard_etale(commutative_base, coefficients)
    rank = len(commutative.generators)
    commutators = tuple(
        commutator_poly(NcPoly.generator(a), NcPoly.generator(b))
        for a in range(rank)
        for b in range(a + 1, rank)
    )
    bound = max(lifted_pres.degree_bound, commutative.degree_bound, 2)
    lifted_pres = lifted_pres.with_bound(bound)
    commutative = commutative.model_copy(
        update={"relations": tuple(commutative.relations) + commutators, "degree_bound": bound}
    )
    if bound != lifted.bound:
        lifted = build_truncated(lifted_pres)

    words, index, lifted_ideal = word_ideal(lifted_pres)
    commutator_rows = [
        {index[lifted.words[key]]: coeff for key, coeff in row.items()}
        for row in nc_filtration(lifted, 1).rows
    ]
    left = lifted_ideal + Subspace.span(len(words), commutator_rows)
    _, _, right = word_ideal(commutative)
    return {
        "x_in_nd": x_in_nd,
        "lift_in_nd": lift_in_nd,
        "abelianization_matches": left == right,
        "lift_dim": lifted_rd.dim,
        "commutative_dim": len(words) - right.rank,
    }
