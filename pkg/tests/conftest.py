import pytest

from coxmask import CoxeterSystem, ReducedExpression, preset_matrix, product_of_word


@pytest.fixture(scope="session")
def a2():
    return CoxeterSystem(preset_matrix("A2"))


@pytest.fixture(scope="session")
def a3():
    return CoxeterSystem(preset_matrix("A3"))


@pytest.fixture(scope="session")
def a4():
    return CoxeterSystem(preset_matrix("A4"))


@pytest.fixture(scope="session")
def b3():
    return CoxeterSystem(preset_matrix("B3"))


@pytest.fixture(scope="session")
def ta1():
    return CoxeterSystem(preset_matrix("tA1"))


def w(system, *letters):
    return product_of_word(system, letters)


def expr(system, *letters):
    return ReducedExpression(system, letters)
