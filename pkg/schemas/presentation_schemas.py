from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from engines.ncpoly_engines import NcPoly
from exceptions import DataValidationException, UnknownGenerator


class Generator(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    weight: int = Field(default=1, ge=0)


class Presentation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "A"
    generators: Tuple[Generator, ...] = ()
    relations: Tuple[NcPoly, ...] = ()
    degree_bound: int = Field(default=3, ge=1)

    @model_validator(mode="after")
    def check_relations(self) -> "Presentation":
        names = [gen.name for gen in self.generators]
        if len(set(names)) != len(names):
            raise DataValidationException(f"Duplicate generator names in {self.name}: {names}")
        for relation in self.relations:
            unknown = [i for i in relation.generators_used() if i >= len(names)]
            if unknown:
                raise UnknownGenerator(f"Relation uses undeclared generator index {unknown[0]}")
            if relation.degree > self.degree_bound:
                raise DataValidationException(
                    f"Relation of degree {relation.degree} exceeds bound {self.degree_bound}"
                )
        return self

    @property
    def names(self) -> List[str]:
        return [gen.name for gen in self.generators]

    @property
    def weights(self) -> List[int]:
        return [gen.weight for gen in self.generators]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator(f"Unknown generator {name!r}")

    def is_homogeneous(self) -> bool:
        return all(relation.is_homogeneous() for relation in self.relations)

    def with_bound(self, degree_bound: int) -> "Presentation":
        return self.model_copy(update={"degree_bound": degree_bound})


class BracketEntry(BaseModel):
    """[l_left, l_right] = sum_k coefficients[k] * l_k + scalar."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    left: int
    right: int
    coefficients: Dict[int, NcPoly] = {}
    scalar: NcPoly = NcPoly()


class LieAlgebroidPresentation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: Presentation
    generators: Tuple[str, ...] = ()
    # anchor[i][j] is sigma(l_i) applied to the j-th base generator
    anchor: Tuple[Tuple[NcPoly, ...], ...] = ()
    brackets: Tuple[BracketEntry, ...] = ()
    degree_bound: Optional[int] = None

    @model_validator(mode="after")
    def check_shapes(self) -> "LieAlgebroidPresentation":
        rank, base_rank = len(self.generators), len(self.base.generators)
        if self.anchor and len(self.anchor) != rank:
            raise DataValidationException("Anchor must list one derivation per L-generator")
        for images in self.anchor:
            if len(images) != base_rank:
                raise DataValidationException("Anchor derivation must give one image per base generator")
        for entry in self.brackets:
            if not (0 <= entry.left < rank and 0 <= entry.right < rank):
                raise DataValidationException(f"Bracket entry out of range: ({entry.left}, {entry.right})")
            if any(k >= rank for k in entry.coefficients):
                raise DataValidationException("Bracket coefficients refer to unknown L-generators")
        return self

    @property
    def rank(self) -> int:
        return len(self.generators)

    def anchor_images(self, i: int) -> Tuple[NcPoly, ...]:
        if self.anchor:
            return self.anchor[i]
        return tuple(NcPoly() for _ in self.base.generators)

    def bracket(self, i: int, j: int) -> Tuple[Dict[int, NcPoly], NcPoly]:
        """Antisymmetric lookup of the bracket table; missing pairs bracket to zero."""
        if i == j:
            return {}, NcPoly()
        for entry in self.brackets:
            if (entry.left, entry.right) == (i, j):
                return dict(entry.coefficients), entry.scalar
            if (entry.left, entry.right) == (j, i):
                return {k: -c for k, c in entry.coefficients.items()}, -entry.scalar
        return {}, NcPoly()


def fresh_name(names: Sequence[str], stem: str) -> str:
    if stem not in names:
        return stem
    suffix = 1
    while f"{stem}{suffix}" in names:
        suffix += 1
    return f"{stem}{suffix}"
