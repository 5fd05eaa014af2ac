import pytest

from chainpart.core import make_system


@pytest.fixture(scope="session")
def sys23():
    return make_system(2, 3)


@pytest.fixture(scope="session")
def sys25():
    return make_system(2, 5)


@pytest.fixture(scope="session")
def sys35():
    return make_system(3, 5)
