import pytest

from bihecke import create_group
from bihecke.heckeops import bihecke_monoid


@pytest.fixture(scope="session")
def A1():
    return create_group("A1")


@pytest.fixture(scope="session")
def A2():
    return create_group("A2")


@pytest.fixture(scope="session")
def A3():
    return create_group("A3")


@pytest.fixture(scope="session")
def M_A2(A2):
    return bihecke_monoid(A2)


@pytest.fixture(scope="session")
def M_A3(A3):
    return bihecke_monoid(A3)


SMALL_GROUPS = ["A1", "A2", "A3", "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)"]
