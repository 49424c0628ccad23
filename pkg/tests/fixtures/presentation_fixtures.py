import pytest

from engines.parser_engines import parse_presentation

WEYL_TEXT = """algebra Weyl;
gens x:0, d:1;
rel d*x - x*d - 1;
bound 2;
"""

FREE_XY_TEXT = """algebra Free2;
gens x, y;
bound 2;
"""

FREE_X_TEXT = """algebra Free1;
gens x;
bound 3;
"""

COMMUTATIVE_XY_TEXT = """algebra Poly2;
gens x, y;
rel x*y - y*x;
bound 2;
"""

TRUNCATED_T_TEXT = """algebra Trunc;
gens t;
rel t*t*t;
bound 3;
"""


@pytest.fixture(scope="function")
def weyl():
    return parse_presentation(WEYL_TEXT)


@pytest.fixture(scope="function")
def free_xy():
    return parse_presentation(FREE_XY_TEXT)


@pytest.fixture(scope="function")
def free_x():
    return parse_presentation(FREE_X_TEXT)


@pytest.fixture(scope="function")
def commutative_xy():
    return parse_presentation(COMMUTATIVE_XY_TEXT)


@pytest.fixture(scope="function")
def truncated_t():
    return parse_presentation(TRUNCATED_T_TEXT)
