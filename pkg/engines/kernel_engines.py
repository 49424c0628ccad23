"""Kernel calculus on finite abelian groups.

A kernel on rows G and columns H is a |G| x |H| matrix of cyclotomic values;
the circle operation is the matrix product summing over the middle group. The
Poincare kernel P(g, h) is the character pairing zeta^(sum g_j h_j e/n_j) and
the Fourier transform of a kernel K on H x H is P o K o Q on the dual group.
"""
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.polyclasses import ANP

from engines.cyclotomic_engines import CyclotomicField, cyclotomic_field
from exceptions import DataValidationException, GroupMismatch, NotAModule, NotClosed
from schemas.group_schemas import Element, FiniteAbGroup

logger = logging.getLogger(__name__)


def field_of(group: FiniteAbGroup) -> CyclotomicField:
    return cyclotomic_field(group.exponent)


def pairing_exponent(group: FiniteAbGroup, left: Element, right: Element) -> int:
    e = group.exponent
    return sum(a * b * (e // n) for a, b, n in zip(left, right, group.moduli)) % e


def character(group: FiniteAbGroup, chi: Element, x: Element) -> ANP:
    """chi(x) for chi in the dual of ``group``; symmetric in its two arguments."""
    return field_of(group).zeta(pairing_exponent(group, chi, x))


def dual_group(group: FiniteAbGroup) -> FiniteAbGroup:
    return group.dual_group()


def character_table(group: FiniteAbGroup) -> List[List[ANP]]:
    elements = group.elements()
    return [[character(group, chi, x) for x in elements] for chi in elements]


def pairing_is_nondegenerate(group: FiniteAbGroup) -> bool:
    """Distinct characters have distinct value rows."""
    field = field_of(group)
    rows = {tuple(field.key(v) for v in row) for row in character_table(group)}
    return len(rows) == group.order


def orthogonality_failures(group: FiniteAbGroup) -> Tuple[List[Tuple[Element, Element]], int]:
    """Pairs (x, x') where sum_chi chi(x) chi(x')^-1 differs from |X|[x = x'], and the number of sums."""
    field = field_of(group)
    elements = group.elements()
    failures, checked = [], 0
    for x in elements:
        for x_prime in elements:
            total = field.zero
            for chi in elements:
                total = total + field.zeta(
                    pairing_exponent(group, chi, x) - pairing_exponent(group, chi, x_prime)
                )
            expected = field.scalar(group.order if x == x_prime else 0)
            checked += 1
            if total != expected:
                failures.append((x, x_prime))
    return failures, checked


class Kernel:
    def __init__(self, rows: FiniteAbGroup, cols: FiniteAbGroup, values: Sequence[Sequence[ANP]]):
        if rows.exponent != cols.exponent:
            raise GroupMismatch(f"Kernel groups {rows.label} and {cols.label} have different exponents")
        if len(values) != rows.order or any(len(row) != cols.order for row in values):
            raise DataValidationException(
                f"Kernel on {rows.label} x {cols.label} needs a {rows.order} x {cols.order} table"
            )
        self.rows = rows
        self.cols = cols
        self.field = field_of(rows)
        self.values = [list(row) for row in values]

    @classmethod
    def from_function(cls, rows: FiniteAbGroup, cols: FiniteAbGroup, fn) -> "Kernel":
        return cls(rows, cols, [[fn(a, b) for b in cols.elements()] for a in rows.elements()])

    @classmethod
    def zero(cls, rows: FiniteAbGroup, cols: FiniteAbGroup) -> "Kernel":
        field = field_of(rows)
        return cls(rows, cols, [[field.zero] * cols.order for _ in range(rows.order)])

    @classmethod
    def diagonal(cls, group: FiniteAbGroup) -> "Kernel":
        field = field_of(group)
        return cls(
            group,
            group,
            [[field.one if i == j else field.zero for j in range(group.order)] for i in range(group.order)],
        )

    def entry(self, a: Element, b: Element) -> ANP:
        return self.values[self.rows.index(a)][self.cols.index(b)]

    def circle(self, other: "Kernel") -> "Kernel":
        if self.cols != other.rows:
            logger.error(f"Cannot compose kernels through {self.cols.label} and {other.rows.label}")
            raise GroupMismatch(
                f"Middle groups differ: {self.cols.label} vs {other.rows.label}"
            )
        zero = self.field.zero
        result = []
        for row in self.values:
            out = [zero] * other.cols.order
            for k, left in enumerate(row):
                if not left:
                    continue
                for j, right in enumerate(other.values[k]):
                    if right:
                        out[j] = out[j] + left * right
            result.append(out)
        return Kernel(self.rows, other.cols, result)

    def scale(self, scalar: ANP) -> "Kernel":
        return Kernel(self.rows, self.cols, [[v * scalar for v in row] for row in self.values])

    def __add__(self, other: "Kernel") -> "Kernel":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise GroupMismatch("Cannot add kernels on different groups")
        return Kernel(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.values, other.values)],
        )

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r, s in zip(self.values, other.values) for a, b in zip(r, s)
        )

    def first_difference(self, other: "Kernel") -> Optional[Tuple[Element, Element]]:
        rows, cols = self.rows.elements(), self.cols.elements()
        for i, (r, s) in enumerate(zip(self.values, other.values)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return rows[i], cols[j]
        return None

    def support(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.values) for j, v in enumerate(row) if v]

    def to_table(self) -> List[List[List[str]]]:
        return [[self.field.format(v) for v in row] for row in self.values]


def circle(left: Kernel, right: Kernel) -> Kernel:
    return left.circle(right)


def poincare(group: FiniteAbGroup) -> Kernel:
    """P on group x dual(group), P(x, chi) = chi(x)."""
    return Kernel.from_function(group, group.dual_group(), lambda x, chi: character(group, chi, x))


def inverse_kernel(group: FiniteAbGroup) -> Kernel:
    """Q on dual(group) x group, Q(chi, x) = chi(x)^-1 / |X|."""
    field = field_of(group)
    norm = field.scalar(QQ(1, group.order))
    return Kernel.from_function(
        group.dual_group(),
        group,
        lambda chi, x: field.zeta(-pairing_exponent(group, chi, x)) * norm,
    )


def _square_group(kernel: Kernel) -> FiniteAbGroup:
    if kernel.rows != kernel.cols:
        logger.error(f"Transform needs a square kernel, got {kernel.rows.label} x {kernel.cols.label}")
        raise GroupMismatch(f"Kernel on {kernel.rows.label} x {kernel.cols.label} is not square")
    return kernel.rows


def transform_kernel(kernel: Kernel) -> Kernel:
    """Phi(K) = P o K o Q, moving a kernel on H x H to dual(H) x dual(H)."""
    target = _square_group(kernel).dual_group()
    return poincare(target).circle(kernel).circle(inverse_kernel(target))


def inverse_transform(kernel: Kernel) -> Kernel:
    """Q o K' o P, the inverse of transform_kernel."""
    group = _square_group(kernel)
    return inverse_kernel(group).circle(kernel).circle(poincare(group))


def double_transform(kernel: Kernel) -> Dict[str, object]:
    """Phi(Phi(K)) compared with the inversion K(-a, -b).

    The scalar is read off the first nonzero entry of the inversion; None for the zero kernel.
    """
    group = _square_group(kernel)
    twice = transform_kernel(transform_kernel(kernel))
    inverted = Kernel.from_function(
        group, group, lambda a, b: kernel.entry(group.neg(a), group.neg(b))
    )
    scalar = next(
        (
            twice.values[i][j] * value ** -1
            for i, row in enumerate(inverted.values)
            for j, value in enumerate(row)
            if value
        ),
        None,
    )
    return {
        "inversion": twice == inverted,
        "proportional": scalar is None or twice == inverted.scale(scalar),
        "identity": twice == kernel,
        "scalar": kernel.field.format(scalar) if scalar is not None else None,
        "witness": twice.first_difference(inverted),
    }


@dataclass(frozen=True)
class TransKernel:
    """K(a, b) = scalar * twist(a) * [b = a + shift] on ``group``; twist lies in the dual."""

    group: FiniteAbGroup
    shift: Element
    twist: Element
    scalar: ANP

    @property
    def pair(self) -> Tuple[Element, Element]:
        return self.shift, self.twist

    def expand(self) -> Kernel:
        group, field = self.group, field_of(self.group)

        def value(a: Element, b: Element) -> ANP:
            if b != group.add(a, self.shift):
                return field.zero
            return self.scalar * character(group, self.twist, a)

        return Kernel.from_function(group, group, value)

    def compose(self, other: "TransKernel") -> "TransKernel":
        """(x, psi) o (x', psi') = psi'(x) (x + x', psi psi')."""
        group = self.group
        cocycle = character(group, other.twist, self.shift)
        return TransKernel(
            group,
            group.add(self.shift, other.shift),
            group.add(self.twist, other.twist),
            self.scalar * other.scalar * cocycle,
        )

    def same(self, other: "TransKernel") -> bool:
        return (self.group, self.shift, self.twist) == (other.group, other.shift, other.twist) and (
            self.scalar == other.scalar
        )

    def describe(self) -> Dict[str, object]:
        return {
            "group": self.group.label,
            "shift": list(self.shift),
            "twist": list(self.twist),
            "scalar": field_of(self.group).format(self.scalar),
        }


def recognize_trans_kernel(kernel: Kernel) -> Optional[TransKernel]:
    group = _square_group(kernel)
    zero = group.zero()
    row = kernel.values[group.index(zero)]
    support = [j for j, v in enumerate(row) if v]
    if len(support) != 1:
        return None
    elements = group.elements()
    shift = elements[support[0]]
    scalar = kernel.entry(zero, shift)
    for a in elements:
        shifted = group.add(a, shift)
        if any(v for b, v in zip(elements, kernel.values[group.index(a)]) if b != shifted):
            return None
    inverse = scalar ** -1
    values = [kernel.entry(a, group.add(a, shift)) * inverse for a in elements]
    for twist in elements:
        if all(character(group, twist, a) == v for a, v in zip(elements, values)):
            return TransKernel(group, shift, twist, scalar)
    return None


def transform_images(group: FiniteAbGroup) -> Dict[Tuple[Element, Element], Optional[TransKernel]]:
    """Phi of every unit-scalar translation kernel on ``group``, recognized on the dual."""
    one = field_of(group).one
    return {
        (x, psi): recognize_trans_kernel(transform_kernel(TransKernel(group, x, psi, one).expand()))
        for x in group.elements()
        for psi in group.elements()
    }


def shift_twist_exchange(
    group: FiniteAbGroup, images: Optional[Dict[Tuple[Element, Element], Optional[TransKernel]]] = None
) -> List[Dict[str, object]]:
    """For every (x, psi) on ``group``, Phi of the translation by x twisted by psi.

    The image is the translation by psi twisted by -x on the dual with scalar psi(x)^-1.
    """
    dual = group.dual_group()
    images = images if images is not None else transform_images(group)
    records = []
    for (x, psi), image in images.items():
        expected = TransKernel(dual, psi, group.neg(x), character(group, psi, x) ** -1)
        records.append(
            {
                "shift": list(x),
                "twist": list(psi),
                "recognized": image is not None,
                "exchanged": image is not None and image.same(expected),
                "image": image.describe() if image is not None else None,
            }
        )
    return records


def trans_multiplicativity_failures(
    group: FiniteAbGroup, images: Dict[Tuple[Element, Element], Optional[TransKernel]]
) -> Tuple[List[Tuple[Tuple[Element, Element], Tuple[Element, Element]]], int]:
    """Pairs of translation kernels with Phi(T o T') different from Phi(T) o Phi(T').

    Phi is linear, so Phi(c T) is c times the recognized image of the unit-scalar T.
    """
    one = field_of(group).one
    failures, checked = [], 0
    for left, left_image in images.items():
        for right, right_image in images.items():
            checked += 1
            product = TransKernel(group, *left, one).compose(TransKernel(group, *right, one))
            expected = images.get(product.pair)
            if left_image is None or right_image is None or expected is None:
                failures.append((left, right))
                continue
            composed = left_image.compose(right_image)
            if composed.pair != expected.pair or composed.scalar != product.scalar * expected.scalar:
                failures.append((left, right))
    return failures, checked


class QuasiSpecialAlgebra:
    """Span of translation kernels closed under the circle operation up to scalars."""

    def __init__(self, group: FiniteAbGroup, basis: Sequence[TransKernel]):
        self.group = group
        self.field = field_of(group)
        self.basis = list(basis)
        self.index = {t.pair: i for i, t in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise DataValidationException("Basis kernels must have distinct (shift, twist) pairs")
        self._kernels: Dict[int, Kernel] = {}
        self._structure: Dict[Tuple[int, int], Tuple[int, ANP]] = {}

    @classmethod
    def generate(
        cls, group: FiniteAbGroup, generators: Sequence[Tuple[Element, Element]], closure_bound: int
    ) -> "QuasiSpecialAlgebra":
        gens = [(group.element(x), group.element(psi)) for x, psi in generators]
        seen = {(group.zero(), group.zero())}
        frontier = list(seen)
        while frontier:
            new = []
            for x, psi in frontier:
                for gx, gpsi in gens:
                    pair = (group.add(x, gx), group.add(psi, gpsi))
                    if pair not in seen:
                        seen.add(pair)
                        new.append(pair)
            if len(seen) > closure_bound:
                logger.error(f"Closure on {group.label} exceeds {closure_bound} translation kernels")
                raise NotClosed(f"Closure exceeds the bound of {closure_bound} basis kernels")
            frontier = new
        one = field_of(group).one
        return cls(group, [TransKernel(group, x, psi, one) for x, psi in sorted(seen)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def kernel(self, i: int) -> Kernel:
        if i not in self._kernels:
            self._kernels[i] = self.basis[i].expand()
        return self._kernels[i]

    def structure(self, i: int, j: int) -> Tuple[int, ANP]:
        """basis[i] o basis[j] = scalar * basis[k]."""
        if (i, j) not in self._structure:
            product = self.basis[i].compose(self.basis[j])
            k = self.index.get(product.pair)
            if k is None:
                raise NotClosed(f"Product of basis kernels {i} and {j} leaves the span")
            self._structure[(i, j)] = (k, product.scalar * self.basis[k].scalar ** -1)
        return self._structure[(i, j)]

    def identity_index(self) -> Optional[int]:
        return self.index.get((self.group.zero(), self.group.zero()))

    def cocycle_failures(self) -> List[Tuple[int, int]]:
        """Pairs whose expanded circle product differs from the structure constant."""
        failures = []
        for i in range(self.rank):
            for j in range(self.rank):
                k, scalar = self.structure(i, j)
                if self.kernel(i).circle(self.kernel(j)) != self.kernel(k).scale(scalar):
                    failures.append((i, j))
        return failures

    def associativity_failures(self) -> List[Tuple[int, int, int]]:
        failures = []
        for i in range(self.rank):
            for j in range(self.rank):
                ij, s_ij = self.structure(i, j)
                for k in range(self.rank):
                    jk, s_jk = self.structure(j, k)
                    left_index, left = self.structure(ij, k)
                    right_index, right = self.structure(i, jk)
                    if left_index != right_index or s_ij * left != s_jk * right:
                        failures.append((i, j, k))
        return failures

    def is_commutative(self) -> bool:
        return all(
            self.structure(i, j)[1] == self.structure(j, i)[1]
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
        )

    def commutator_scalar(self, i: int, j: int) -> ANP:
        """Ratio s_ij / s_ji of the two orders of multiplication."""
        return self.structure(i, j)[1] * self.structure(j, i)[1] ** -1

    def describe(self) -> List[Dict[str, object]]:
        return [t.describe() for t in self.basis]


def quasi_special_algebra(
    group: FiniteAbGroup, generators: Sequence[Tuple[Element, Element]], closure_bound: int
) -> QuasiSpecialAlgebra:
    return QuasiSpecialAlgebra.generate(group, generators, closure_bound)


def translation_algebra(group: FiniteAbGroup, shift: Element, closure_bound: int) -> QuasiSpecialAlgebra:
    return QuasiSpecialAlgebra.generate(group, [(shift, group.zero())], closure_bound)


def transform_algebra(algebra: QuasiSpecialAlgebra) -> QuasiSpecialAlgebra:
    """Basiswise transform; each image is again a translation kernel up to scalar."""
    basis = []
    for i in range(algebra.rank):
        image = recognize_trans_kernel(transform_kernel(algebra.kernel(i)))
        if image is None:
            raise NotClosed(f"Transform of basis kernel {i} is not a translation kernel")
        basis.append(image)
    return QuasiSpecialAlgebra(algebra.group.dual_group(), basis)


def transported_constant_failures(
    algebra: QuasiSpecialAlgebra, image: QuasiSpecialAlgebra
) -> List[Tuple[int, int]]:
    """Pairs where the structure constants of the transformed basis differ from the original."""
    failures = []
    for i in range(algebra.rank):
        for j in range(algebra.rank):
            k, scalar = algebra.structure(i, j)
            k_image, scalar_image = image.structure(i, j)
            if k != k_image or scalar != scalar_image:
                failures.append((i, j))
    return failures


class GradedModule:
    """Fiber vectors m(h) of length ``rank`` indexed by the elements of ``group``."""

    def __init__(self, group: FiniteAbGroup, fibers: Sequence[Sequence[ANP]]):
        if len(fibers) != group.order:
            raise DataValidationException(f"Module over {group.label} needs {group.order} fibers")
        ranks = {len(fiber) for fiber in fibers}
        if len(ranks) != 1:
            raise DataValidationException("Module fibers must have a uniform dimension")
        self.group = group
        self.field = field_of(group)
        self.rank = ranks.pop()
        self.fibers = [list(fiber) for fiber in fibers]

    @classmethod
    def delta(cls, group: FiniteAbGroup, element: Element) -> "GradedModule":
        field = field_of(group)
        return cls(group, [[field.one if a == element else field.zero] for a in group.elements()])

    def acted(self, kernel: Kernel) -> "GradedModule":
        """(K.m)(a) = sum_b K(a, b) m(b)."""
        if kernel.cols != self.group:
            raise GroupMismatch(f"Kernel columns {kernel.cols.label} do not match module group {self.group.label}")
        zero = self.field.zero
        fibers = []
        for row in kernel.values:
            out = [zero] * self.rank
            for value, fiber in zip(row, self.fibers):
                if value:
                    out = [o + value * f for o, f in zip(out, fiber)]
            fibers.append(out)
        return GradedModule(kernel.rows, fibers)

    def scale(self, scalar: ANP) -> "GradedModule":
        return GradedModule(self.group, [[v * scalar for v in fiber] for fiber in self.fibers])

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.group == other.group and all(
            a == b for f, g in zip(self.fibers, other.fibers) for a, b in zip(f, g)
        )

    def is_constant(self) -> bool:
        return all(fiber == self.fibers[0] for fiber in self.fibers)


# action of basis kernel i on a module; defaults to convolution with the kernel
ModuleAction = Callable[[int, GradedModule], GradedModule]


def module_failures(
    algebra: QuasiSpecialAlgebra, module: GradedModule, action: Optional[ModuleAction] = None
) -> List[Tuple[int, int]]:
    """Pairs (i, j) with K_i(K_j m) different from s_ij K_k m."""
    act = action or (lambda i, m: m.acted(algebra.kernel(i)))
    failures = []
    actions = [act(i, module) for i in range(algebra.rank)]
    for i in range(algebra.rank):
        for j in range(algebra.rank):
            k, scalar = algebra.structure(i, j)
            if act(i, actions[j]) != actions[k].scale(scalar):
                failures.append((i, j))
    return failures


def verify_module(
    algebra: QuasiSpecialAlgebra, module: GradedModule, action: Optional[ModuleAction] = None
) -> None:
    failures = module_failures(algebra, module, action)
    if failures:
        i, j = failures[0]
        logger.error(f"Module action breaks the structure constant of basis pair ({i}, {j})")
        raise NotAModule(f"K_{i}(K_{j} m) differs from the structure constant times K_k m for ({i}, {j})")


def transform_module(
    algebra: QuasiSpecialAlgebra, module: GradedModule, action: Optional[ModuleAction] = None
) -> GradedModule:
    """Phi(m) = P o m after checking that m is an algebra module."""
    verify_module(algebra, module, action)
    return module.acted(poincare(module.group.dual_group()))


def inverse_transform_module(module: GradedModule) -> GradedModule:
    return module.acted(inverse_kernel(module.group))


def module_compatibility_failures(
    algebra: QuasiSpecialAlgebra, module: GradedModule
) -> List[int]:
    """Basis kernels K with Phi(K.m) different from Phi(K).Phi(m)."""
    image = transform_module(algebra, module)
    poincare_kernel = poincare(module.group.dual_group())
    failures = []
    for i in range(algebra.rank):
        left = module.acted(algebra.kernel(i)).acted(poincare_kernel)
        right = image.acted(transform_kernel(algebra.kernel(i)))
        if left != right:
            failures.append(i)
    return failures


def random_kernel(group: FiniteAbGroup, seed: int, spread: int = 3) -> Kernel:
    """Dense kernel with entries small integer combinations of zeta powers."""
    rng = random.Random(seed)
    field = field_of(group)
    terms = min(field.order, 3)

    def entry(a: Element, b: Element) -> ANP:
        return field.combination([rng.randint(-spread, spread) for _ in range(terms)])

    return Kernel.from_function(group, group, entry)


def random_module(group: FiniteAbGroup, rank: int, seed: int, spread: int = 3) -> GradedModule:
    rng = random.Random(seed)
    field = field_of(group)
    terms = min(field.order, 3)
    return GradedModule(
        group,
        [
            [field.combination([rng.randint(-spread, spread) for _ in range(terms)]) for _ in range(rank)]
            for _ in range(group.order)
        ],
    )
