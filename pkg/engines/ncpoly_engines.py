from itertools import product
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from sympy import QQ

from engines.linalg_engines import qq_str, to_qq

Word = Tuple[int, ...]


def word_key(word: Word) -> Tuple[int, Word]:
    return len(word), word


def words_up_to(generators: int, bound: int) -> List[Word]:
    """All words of length <= bound, in length-then-lexicographic order."""
    words: List[Word] = []
    for length in range(bound + 1):
        words.extend(product(range(generators), repeat=length))
    return words


class NcPoly:
    """Noncommutative polynomial with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[Word, object] = None):
        cleaned = {}
        for word, coeff in (terms or {}).items():
            coeff = to_qq(coeff)
            if coeff:
                cleaned[tuple(word)] = coeff
        self._terms = dict(sorted(cleaned.items(), key=lambda item: word_key(item[0])))

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    @classmethod
    def constant(cls, value) -> "NcPoly":
        return cls({(): value})

    @classmethod
    def generator(cls, index: int) -> "NcPoly":
        return cls({(index,): 1})

    @classmethod
    def monomial(cls, word: Sequence[int], coeff=1) -> "NcPoly":
        return cls({tuple(word): coeff})

    @property
    def terms(self) -> Dict[Word, object]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, object]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(len(word) for word in self._terms)

    def leading_word(self) -> Word:
        return max(self._terms, key=word_key)

    def generators_used(self) -> set:
        return {letter for word in self._terms for letter in word}

    def is_homogeneous(self) -> bool:
        return len({len(word) for word in self._terms}) <= 1

    def weight(self, weights: Sequence[int]) -> int:
        if not self._terms:
            return -1
        return max(sum(weights[letter] for letter in word) for word in self._terms)

    def homogeneous_components(self) -> List["NcPoly"]:
        by_length: Dict[int, Dict[Word, object]] = {}
        for word, coeff in self._terms.items():
            by_length.setdefault(len(word), {})[word] = coeff
        return [NcPoly(by_length[length]) for length in sorted(by_length)]

    def __add__(self, other) -> "NcPoly":
        other = _coerce(other)
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            terms[word] = terms.get(word, QQ(0)) + coeff
        return NcPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly({word: -coeff for word, coeff in self._terms.items()})

    def __sub__(self, other) -> "NcPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "NcPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "NcPoly":
        other = _coerce(other)
        terms: Dict[Word, object] = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                word = left + right
                terms[word] = terms.get(word, QQ(0)) + a * b
        return NcPoly(terms)

    def __rmul__(self, other) -> "NcPoly":
        return _coerce(other) * self

    def __pow__(self, exponent: int) -> "NcPoly":
        result = NcPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def truncate(self, bound: int) -> "NcPoly":
        return NcPoly({w: c for w, c in self._terms.items() if len(w) <= bound})

    def substitute(self, images: Sequence["NcPoly"]) -> "NcPoly":
        result = NcPoly()
        for word, coeff in self._terms.items():
            term = NcPoly.constant(coeff)
            for letter in word:
                term = term * images[letter]
            result = result + term
        return result

    def reindex(self, mapping: Sequence[int]) -> "NcPoly":
        return NcPoly({tuple(mapping[l] for l in word): c for word, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, str)):
            other = NcPoly.constant(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"NcPoly({self.to_terms()})"

    def to_terms(self) -> List[dict]:
        return [
            {"word": list(word), "coeff": qq_str(coeff)}
            for word, coeff in self._terms.items()
        ]

    @classmethod
    def from_terms(cls, terms: Iterable[dict]) -> "NcPoly":
        result: Dict[Word, object] = {}
        for term in terms:
            word = tuple(int(letter) for letter in term["word"])
            result[word] = result.get(word, QQ(0)) + to_qq(str(term["coeff"]))
        return cls(result)

    def format(self, names: Sequence[str]) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for word, coeff in sorted(self._terms.items(), key=lambda item: word_key(item[0]), reverse=True):
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            letters = "*".join(names[letter] for letter in word)
            if not word:
                body = qq_str(magnitude)
            elif magnitude == 1:
                body = letters
            else:
                body = f"{qq_str(magnitude)}*{letters}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value) -> NcPoly:
    if isinstance(value, NcPoly):
        return value
    return NcPoly.constant(value)


def commutator_poly(left: NcPoly, right: NcPoly) -> NcPoly:
    return left * right - right * left
