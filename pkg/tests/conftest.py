import numpy as np
import pytest

from netplace.graph import DiGraph, from_adjacency

STAR4_MATRIX = np.array(
    [
        [0.0, -0.5, -0.8, -0.6],
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]
)


@pytest.fixture
def star4() -> DiGraph:
    """4-node hub system: node 0 feeds and is fed by nodes 1..3."""
    return from_adjacency(STAR4_MATRIX)


@pytest.fixture
def path3() -> DiGraph:
    """Directed path 0 -> 1 -> 2."""
    return DiGraph(3, ((0, 1, 1.0), (1, 2, 1.0)))
