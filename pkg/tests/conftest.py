import pytest

from ppmeasure.field import make_field


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F7():
    return make_field(7)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2, [1, 0, 1])


@pytest.fixture(scope="session")
def F8():
    return make_field(2, 3)
