# tests/conftest.py
import pytest

from config.runtime_config import RuntimeConfig
from network.model import Graph


@pytest.fixture(autouse=True)
def reset_runtime_config():
    RuntimeConfig.reset()
    yield
    RuntimeConfig.reset()


@pytest.fixture
def edge_graph() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def path3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star3() -> Graph:
    # center 0
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def empty4() -> Graph:
    return Graph.from_edges(4, [])
