import numpy as np
import pytest

from orliczforms import Box, build_corpus


@pytest.fixture(scope="session")
def box2():
    return Box([0.0, 0.0], [1.0, 1.0])


@pytest.fixture(scope="session")
def box3():
    return Box([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])


@pytest.fixture(scope="session")
def corpus2():
    # admission is exercised separately; skip the slow gate here
    return build_corpus(dims=2, admit=False)


@pytest.fixture(scope="session")
def corpus3():
    return build_corpus(dims=3, admit=False)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)
