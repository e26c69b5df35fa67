import numpy as np
import pytest

from salmon import schur
from salmon.determinantal import strassen_poly


@pytest.fixture(scope="session")
def m6():
    return schur.m6_basis((3, 3, 4))


@pytest.fixture(scope="session")
def m9():
    return schur.m9_basis((3, 3, 4))


@pytest.fixture(scope="session")
def strassen():
    return strassen_poly()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def m5():
    return schur.m5_basis((4, 4, 4))
