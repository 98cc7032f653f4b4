import pytest

from polarank.gf import build_field
from polarank.geometry import SymplecticSpace


@pytest.fixture(scope="session")
def w33_space():
    return SymplecticSpace(2, build_field(3, 1))


@pytest.fixture(scope="session")
def w53_space():
    return SymplecticSpace(3, build_field(3, 1))
