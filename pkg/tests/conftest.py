import numpy as np
import pytest

from psiwave import make_grid


@pytest.fixture
def grid8():
    return make_grid(8)


@pytest.fixture
def grid16():
    return make_grid(16)


@pytest.fixture
def grid128():
    return make_grid(128)


@pytest.fixture
def rng():
    return np.random.default_rng(20230517)
