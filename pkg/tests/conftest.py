import numpy as np
import pytest

from hsglab import make_graph
from hsglab.generators import er_edge_array


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    return make_graph(n, er_edge_array(n, p, rng))


def random_connected_graph(n, p, seed):
    from hsglab import is_connected
    for attempt in range(200):
        g = random_graph(n, p, seed * 1000 + attempt)
        if is_connected(g):
            return g
    raise AssertionError("could not sample a connected graph")


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (1, 2), (0, 2)])
