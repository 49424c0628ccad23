from itertools import product
from math import lcm
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from exceptions import DataValidationException, ZeroModulus

Element = Tuple[int, ...]


class FiniteAbGroup(BaseModel):
    """Z/n_1 x ... x Z/n_k. ``dual`` marks the character group of the same moduli."""

    model_config = ConfigDict(frozen=True)

    moduli: Tuple[int, ...]
    dual: bool = False

    @field_validator("moduli")
    def positive_moduli(cls, v):
        if not v:
            raise DataValidationException("Group needs at least one cyclic factor")
        for modulus in v:
            if modulus < 1:
                raise ZeroModulus(f"Cyclic factor Z{modulus} is not allowed")
        return v

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        result = 1
        for modulus in self.moduli:
            result *= modulus
        return result

    @property
    def exponent(self) -> int:
        return lcm(*self.moduli)

    @property
    def label(self) -> str:
        text = "x".join(f"Z{n}" for n in self.moduli)
        return f"dual({text})" if self.dual else text

    def elements(self) -> List[Element]:
        return list(product(*(range(n) for n in self.moduli)))

    def index(self, element: Element) -> int:
        result = 0
        for value, modulus in zip(element, self.moduli):
            result = result * modulus + value % modulus
        return result

    def element(self, values) -> Element:
        values = tuple(int(v) for v in values)
        if len(values) != self.rank:
            raise DataValidationException(
                f"Element {values} has {len(values)} coordinates, group {self.label} has {self.rank}"
            )
        return tuple(v % n for v, n in zip(values, self.moduli))

    def zero(self) -> Element:
        return tuple(0 for _ in self.moduli)

    def add(self, left: Element, right: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(left, right, self.moduli))

    def neg(self, element: Element) -> Element:
        return tuple(-a % n for a, n in zip(element, self.moduli))

    def multiple(self, element: Element, k: int) -> Element:
        return tuple(a * k % n for a, n in zip(element, self.moduli))

    def dual_group(self) -> "FiniteAbGroup":
        return FiniteAbGroup(moduli=self.moduli, dual=not self.dual)
