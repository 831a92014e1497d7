import numpy as np
import pytest

from upag.graph_model import Dag

# Two small hand-checkable instances used across the suite.
DAG4_BLOCKS = [[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 3]]
DAG5_BLOCKS = [[0, 0, 0], [1, 1, 1], [1, 1, 1], [3, 2, 2], [3, 4, 4]]


@pytest.fixture
def dag4() -> Dag:
    return Dag(3, DAG4_BLOCKS)


@pytest.fixture
def dag5() -> Dag:
    return Dag(3, DAG5_BLOCKS)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xC0FFEE)
