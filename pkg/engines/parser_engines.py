"""Grammars for presentations, polynomials, groups and algebra specs.

Presentation text is a sequence of statements:

    algebra Weyl;
    gens x:0, d:1;
    rel d*x - x*d - 1;
    bound 3;

Weights after ``:`` default to 1. ``#`` starts a comment.
"""
import logging
from functools import reduce
from typing import Callable, Dict, List, Sequence, Tuple

import pyparsing as pp

from engines.linalg_engines import to_qq
from engines.ncpoly_engines import NcPoly
from exceptions import ParseError, UnknownGenerator, ZeroModulus
from schemas.group_schemas import Element, FiniteAbGroup
from schemas.presentation_schemas import Generator, Presentation

logger = logging.getLogger(__name__)

# parsed expressions are evaluated once the generator names are known
Builder = Callable[[Dict[str, int]], NcPoly]

KEYWORDS = ("algebra", "gens", "rel", "bound")

identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_")
natural = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
signed = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
rational = pp.Regex(r"\d+(/\d+)?")


def _constant(t) -> Builder:
    value = to_qq(t[0])
    return lambda index: NcPoly.constant(value)


def _symbol(s: str, loc: int, t) -> Builder:
    name, line, column = t[0], pp.lineno(loc, s), pp.col(loc, s)

    def build(index: Dict[str, int]) -> NcPoly:
        if name not in index:
            raise UnknownGenerator(f"Unknown generator {name!r}", line=line, column=column)
        return NcPoly.generator(index[name])

    return build


def _power(t) -> Builder:
    base, exponents = t[0][0], list(t[0][1:])
    total = reduce(lambda a, b: a * b, exponents, 1)
    return lambda index: base(index) ** total


def _negate(t) -> Builder:
    operand = t[0][1]
    return lambda index: -operand(index)


def _product(t) -> Builder:
    factors = list(t[0][::2])
    return lambda index: reduce(lambda a, b: a * b, (f(index) for f in factors))


def _sum(t) -> Builder:
    tokens = list(t[0])
    first, rest = tokens[0], list(zip(tokens[1::2], tokens[2::2]))

    def build(index: Dict[str, int]) -> NcPoly:
        result = first(index)
        for sign, term in rest:
            result = result + term(index) if sign == "+" else result - term(index)
        return result

    return build


operand = rational.copy().set_parse_action(_constant) | identifier.copy().set_parse_action(_symbol)

expression = pp.infix_notation(
    operand,
    [
        (pp.Suppress("^") + natural, 1, pp.OpAssoc.LEFT, _power),
        (pp.Literal("-"), 1, pp.OpAssoc.RIGHT, _negate),
        (pp.Literal("*"), 2, pp.OpAssoc.LEFT, _product),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _sum),
    ],
)

keyword = pp.MatchFirst([pp.Keyword(word) for word in KEYWORDS])
generator_decl = pp.Group(
    ~keyword + identifier("name") + pp.Optional(pp.Suppress(":") + natural("weight"))
)
SEMI = pp.Suppress(";")

algebra_statement = pp.Keyword("algebra") - identifier + SEMI
gens_statement = pp.Keyword("gens") - pp.Group(pp.Optional(pp.DelimitedList(generator_decl))) + SEMI
rel_statement = pp.Keyword("rel") - expression + SEMI
bound_statement = pp.Keyword("bound") - natural + SEMI

document = pp.ZeroOrMore(
    pp.Group(algebra_statement | gens_statement | rel_statement | bound_statement)
) + pp.StringEnd()
document.ignore(pp.python_style_comment)

group_spec = pp.DelimitedList(pp.Suppress("Z") + natural, delim="x") + pp.StringEnd()

vector = pp.Group(pp.Suppress("(") + pp.DelimitedList(signed) + pp.Suppress(")"))
algebra_item = pp.Group(pp.one_of("shift twist") - pp.Suppress("=") + vector)
algebra_spec = pp.Optional(pp.DelimitedList(algebra_item, delim=";")) + pp.StringEnd()


def _parse(grammar: pp.ParserElement, text: str, what: str) -> pp.ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as err:
        logger.warning(f"Rejected {what} input at line {err.lineno}, column {err.col}: {err.msg}")
        raise ParseError(f"Malformed {what}: {err.msg}", line=err.lineno, column=err.col)


def parse_presentation(text: str, default_bound: int = 3) -> Presentation:
    name, bound = "A", default_bound
    generators: List[Generator] = []
    relations: List[Builder] = []
    for statement in _parse(document, text, "presentation"):
        kind = statement[0]
        if kind == "algebra":
            name = statement[1]
        elif kind == "gens":
            for decl in statement[1]:
                generators.append(Generator(name=decl["name"], weight=decl.get("weight", 1)))
        elif kind == "rel":
            relations.append(statement[1])
        elif kind == "bound":
            bound = statement[1]
    index = {gen.name: i for i, gen in enumerate(generators)}
    return Presentation(
        name=name,
        generators=tuple(generators),
        relations=tuple(build(index) for build in relations),
        degree_bound=bound,
    )


def print_presentation(pres: Presentation) -> str:
    lines = [f"algebra {pres.name};"]
    decls = ", ".join(f"{gen.name}:{gen.weight}" for gen in pres.generators)
    lines.append(f"gens {decls};" if decls else "gens ;")
    for relation in pres.relations:
        lines.append(f"rel {relation.format(pres.names)};")
    lines.append(f"bound {pres.degree_bound};")
    return "\n".join(lines) + "\n"


def parse_poly(text: str, names: Sequence[str]) -> NcPoly:
    builder = _parse(expression + pp.StringEnd(), text, "polynomial")[0]
    return builder({name: i for i, name in enumerate(names)})


def parse_group(text: str) -> FiniteAbGroup:
    moduli = list(_parse(group_spec, text.strip(), "group"))
    for position, modulus in enumerate(moduli):
        if modulus < 1:
            logger.error(f"Group spec {text!r} has a zero modulus in factor {position}")
            raise ZeroModulus(f"Factor {position} of {text!r} is Z{modulus}")
    return FiniteAbGroup(moduli=tuple(moduli))


def parse_algebra_spec(text: str, group: FiniteAbGroup) -> List[Tuple[Element, Element]]:
    """``shift=(1,0);twist=(0,1)`` -> generator pairs (shift, twist), the other part zero."""
    generators = []
    for kind, values in _parse(algebra_spec, text.strip(), "algebra spec"):
        element = group.element(values)
        if kind == "shift":
            generators.append((element, group.zero()))
        else:
            generators.append((group.zero(), element))
    return generators
