import pytest

from schemas.group_schemas import FiniteAbGroup


@pytest.fixture(scope="function")
def z2():
    return FiniteAbGroup(moduli=(2,))


@pytest.fixture(scope="function")
def z3():
    return FiniteAbGroup(moduli=(3,))


@pytest.fixture(scope="function")
def z4():
    return FiniteAbGroup(moduli=(4,))


@pytest.fixture(scope="function")
def z2_z4():
    return FiniteAbGroup(moduli=(2, 4))
