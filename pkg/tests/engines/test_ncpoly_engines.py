from sympy import QQ

from engines.ncpoly_engines import NcPoly, commutator_poly, words_up_to

x, y = NcPoly.generator(0), NcPoly.generator(1)


def test_words_up_to_orders_by_length_then_letters():
    assert words_up_to(2, 2) == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


def test_arithmetic_is_noncommutative():
    assert x * y != y * x
    assert (x + 1) * (x - 1) == x * x - 1
    assert commutator_poly(x, y) == x * y - y * x
    assert (x - x).is_zero()


def test_degree_and_components():
    poly = x * y + 3 * x - 2
    assert poly.degree == 2
    assert not poly.is_homogeneous()
    assert [c.degree for c in poly.homogeneous_components()] == [0, 1, 2]
    assert poly.leading_word() == (0, 1)
    assert NcPoly().degree == -1


def test_weight_uses_generator_weights():
    assert (x * y + y).weight([0, 1]) == 1
    assert (y * y).weight([0, 1]) == 2


def test_format_puts_leading_word_first():
    poly = NcPoly.generator(1) * x - x * NcPoly.generator(1) - 1
    assert poly.format(["x", "d"]) == "d*x - x*d - 1"
    assert (NcPoly.constant("-1/2") * x).format(["x"]) == "-1/2*x"
    assert NcPoly().format(["x"]) == "0"


def test_substitute_and_truncate():
    poly = x * x + y
    assert poly.substitute([y, x]) == y * y + x
    assert (x ** 3 + x).truncate(2) == x


def test_terms_round_trip():
    poly = x * y - NcPoly.constant(QQ(1, 3))
    assert NcPoly.from_terms(poly.to_terms()) == poly
    assert poly.to_terms()[0] == {"word": [], "coeff": "-1/3"}
