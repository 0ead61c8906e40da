import numpy as np
import pytest

from nextviz.datasets import load_cars, load_college, load_medals


@pytest.fixture(scope="session")
def cars():
    return load_cars()


@pytest.fixture(scope="session")
def college():
    return load_college()


@pytest.fixture(scope="session")
def medals():
    return load_medals()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240801)
