"""Exact sparse linear algebra over QQ.

Vectors are dicts ``{coordinate: coefficient}`` holding no zero coefficients.
Row reduction goes through sympy's ``DomainMatrix``.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from exceptions import DataValidationException

Vector = Dict[int, object]


def to_qq(value):
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                numerator, denominator = text.split("/", 1)
                return QQ(int(numerator), int(denominator))
            return QQ(int(text))
        except (ValueError, ZeroDivisionError):
            raise DataValidationException(f"Not an exact rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def qq_str(value) -> str:
    value = to_qq(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def vec_add(left: Vector, right: Vector, scale=1) -> Vector:
    result = dict(left)
    for key, coeff in right.items():
        value = result.get(key, QQ(0)) + coeff * scale
        if value:
            result[key] = value
        else:
            result.pop(key, None)
    return result


def vec_scale(vector: Vector, scale) -> Vector:
    if not scale:
        return {}
    return {key: coeff * scale for key, coeff in vector.items()}


def vec_sum(vectors: Iterable[Vector]) -> Vector:
    result: Vector = {}
    for vector in vectors:
        result = vec_add(result, vector)
    return result


def unit_vector(index: int) -> Vector:
    return {index: QQ(1)}


def _reversed_rref(dim: int, vectors: Sequence[Vector]) -> List[Vector]:
    # columns are reversed so that pivots land on the highest coordinate
    rows = [vector for vector in vectors if vector]
    if not rows or dim == 0:
        return []
    dod = {
        i: {dim - 1 - key: coeff for key, coeff in row.items()}
        for i, row in enumerate(rows)
    }
    matrix = DomainMatrix.from_dod(dod, (len(rows), dim), QQ)
    reduced, pivots = matrix.rref()
    reduced_rows = reduced.to_dod()
    result = []
    for i in range(len(pivots)):
        row = reduced_rows.get(i, {})
        result.append({dim - 1 - key: coeff for key, coeff in row.items() if coeff})
    return sorted(result, key=max)


class Subspace:
    """Canonical row-reduced subspace of QQ^dim.

    Every row has coefficient 1 at its pivot, which is the row's highest
    coordinate, and 0 at every other pivot.
    """

    __slots__ = ("dim", "rows", "_pivots")

    def __init__(self, dim: int, rows: List[Vector]):
        self.dim = dim
        self.rows = tuple(rows)
        self._pivots = {max(row): i for i, row in enumerate(self.rows)}

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Vector]) -> "Subspace":
        return cls(dim, _reversed_rref(dim, list(vectors)))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, [])

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, [unit_vector(i) for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._pivots)

    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, vector: Vector) -> Vector:
        result = dict(vector)
        for pivot in sorted(set(result) & set(self._pivots), reverse=True):
            coeff = result.get(pivot)
            if coeff:
                result = vec_add(result, self.rows[self._pivots[pivot]], -coeff)
        return result

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.dim != other.dim:
            raise DataValidationException("Subspaces live in different spaces")
        return Subspace.span(self.dim, list(self.rows) + list(other.rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, tuple(tuple(sorted(row.items())) for row in self.rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"


@dataclass(frozen=True)
class AffineSolution:
    consistent: bool
    particular: Optional[Vector]
    kernel: Tuple[Vector, ...]
    unknowns: int

    @property
    def nullity(self) -> int:
        return len(self.kernel)


def solve_affine(equations: Sequence[Vector], rhs: Sequence, unknowns: int) -> AffineSolution:
    """Solve ``sum_j equations[i][j] * x_j = rhs[i]`` exactly."""
    rows = []
    for coeffs, value in zip(equations, rhs):
        row = {key: to_qq(coeff) for key, coeff in coeffs.items() if coeff}
        if value:
            row[unknowns] = to_qq(value)
        if row:
            rows.append(row)
    if not rows:
        kernel = tuple(unit_vector(j) for j in range(unknowns))
        return AffineSolution(True, {}, kernel, unknowns)

    matrix = DomainMatrix.from_dod(dict(enumerate(rows)), (len(rows), unknowns + 1), QQ)
    reduced, pivots = matrix.rref()
    if unknowns in pivots:
        return AffineSolution(False, None, (), unknowns)

    reduced_rows = reduced.to_dod()
    particular: Vector = {}
    pivot_rows = {}
    for i, pivot in enumerate(pivots):
        row = reduced_rows.get(i, {})
        pivot_rows[pivot] = row
        if row.get(unknowns):
            particular[pivot] = row[unknowns]

    kernel = []
    for free in range(unknowns):
        if free in pivot_rows:
            continue
        vector = {free: QQ(1)}
        for pivot, row in pivot_rows.items():
            coeff = row.get(free)
            if coeff:
                vector[pivot] = -coeff
        kernel.append(vector)
    return AffineSolution(True, particular, tuple(kernel), unknowns)


def kernel_of(images: Sequence[Vector], target_dim: int) -> Tuple[Vector, ...]:
    """Kernel of the linear map sending basis vector j to ``images[j]``."""
    equations: List[Vector] = [dict() for _ in range(target_dim)]
    for j, image in enumerate(images):
        for i, coeff in image.items():
            equations[i][j] = coeff
    solution = solve_affine(equations, [0] * target_dim, len(images))
    return solution.kernel


def image_of(images: Sequence[Vector], target_dim: int) -> Subspace:
    return Subspace.span(target_dim, images)


def apply_linear(images: Sequence[Vector], vector: Vector) -> Vector:
    result: Vector = {}
    for key, coeff in vector.items():
        result = vec_add(result, images[key], coeff)
    return result
