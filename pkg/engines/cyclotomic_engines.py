"""Exact arithmetic in Q(zeta_e) through sympy's algebraic number residues."""
from functools import lru_cache
from typing import List

from sympy import QQ, cyclotomic_poly
from sympy.polys.polyclasses import ANP

from engines.linalg_engines import qq_str, to_qq


class CyclotomicField:
    def __init__(self, order: int):
        self.order = order
        self.modulus = [QQ(int(c)) for c in cyclotomic_poly(order, polys=True).all_coeffs()]
        self.zero = ANP.zero(self.modulus, QQ)
        self.one = ANP.one(self.modulus, QQ)
        # multiplying by one reduces x modulo the cyclotomic polynomial (needed for order 1, 2)
        zeta = ANP([QQ(1), QQ(0)], self.modulus, QQ) * self.one
        self._powers = [self.one]
        for _ in range(order - 1):
            self._powers.append(self._powers[-1] * zeta)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def zeta(self, k: int = 1) -> ANP:
        return self._powers[k % self.order]

    def scalar(self, value) -> ANP:
        return self.one * to_qq(value)

    def combination(self, coefficients) -> ANP:
        """sum_k coefficients[k] * zeta^k."""
        result = self.zero
        for k, coeff in enumerate(coefficients):
            if coeff:
                result = result + self.zeta(k) * to_qq(coeff)
        return result

    def key(self, value: ANP) -> tuple:
        return tuple(value.to_list())

    def format(self, value: ANP) -> List[str]:
        """Coefficients of 1, zeta, zeta^2, ... as canonical rationals."""
        coefficients = list(reversed(value.to_list())) or [QQ(0)]
        return [qq_str(c) for c in coefficients]


@lru_cache(maxsize=None)
def cyclotomic_field(order: int) -> CyclotomicField:
    return CyclotomicField(order)
