import pytest
from hypothesis import settings

from avgsat import measure
from avgsat.formula import ConnectiveTable

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def std():
    return ConnectiveTable.standard()


@pytest.fixture(scope="session")
def all_binary():
    return ConnectiveTable.all_binary()


@pytest.fixture(scope="session")
def space1(std):
    return measure.covering_space(std, 1)


@pytest.fixture(scope="session")
def space2(std):
    return measure.covering_space(std, 2)
