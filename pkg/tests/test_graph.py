import json

import numpy as np
import pytest

from hsglab import (DomainError, connected_components, degree_summary,
                    graphs_equal, induced_subgraph, make_graph, neighbors,
                    path_graph, star_graph)
from hsglab.graph import degrees
from hsglab.serialize import (canonical_dumps, graph_to_obj, obj_to_graph,
                              parse_edge_list)

from conftest import random_graph


def test_neighbors_triangle(triangle):
    assert neighbors(triangle, 0) == {1, 2}


def test_neighbors_path_interior():
    assert neighbors(path_graph(3), 1) == {0, 2}


def test_neighbors_isolated():
    g = make_graph(3, [])
    assert neighbors(g, 1) == set()


def test_neighbors_out_of_range():
    with pytest.raises(IndexError):
        neighbors(path_graph(3), 3)


def test_rejects_self_loops_and_duplicates():
    with pytest.raises(DomainError):
        make_graph(3, [(0, 0)])
    with pytest.raises(DomainError):
        make_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(DomainError):
        make_graph(2, [(0, 5)])


def test_degree_summary(triangle):
    assert degree_summary(triangle).mean_degree == 2.0
    assert degree_summary(path_graph(4)).mean_degree == 1.5
    assert degree_summary(star_graph(5)).mean_degree == pytest.approx(8 / 5)


def test_degree_summary_empty_graph():
    with pytest.raises(DomainError):
        degree_summary(make_graph(0, []))


def test_sum_of_degrees_is_twice_edges():
    for seed in range(20):
        g = random_graph(12, 0.3, seed)
        assert degrees(g).sum() == 2 * g.num_edges


def test_neighbors_symmetric():
    g = random_graph(10, 0.4, 7)
    for u in range(10):
        for v in neighbors(g, u):
            assert u in neighbors(g, v)


def test_connected_components():
    assert len(connected_components(path_graph(4))) == 1
    two = make_graph(4, [(0, 1), (2, 3)])
    assert connected_components(two) == [{0, 1}, {2, 3}]
    assert len(connected_components(make_graph(3, []))) == 3


def test_induced_subgraph(triangle):
    sub, _ = induced_subgraph(triangle, {0, 1})
    assert sub.num_nodes == 2 and sub.num_edges == 1

    g = path_graph(4)
    sub, node_map = induced_subgraph(g, {0, 2, 3})
    assert sub.num_edges == 1
    assert sub.edges.tolist() == [[1, 2]]
    assert node_map[2] == 1 and node_map[1] == -1

    full, _ = induced_subgraph(g, range(4))
    assert graphs_equal(full, g)


def test_subgraph_serialization_roundtrip():
    g = random_graph(9, 0.4, 3)
    g = make_graph(g.num_nodes, g.edges,
                   node_features=np.arange(9 * 2, dtype=float).reshape(9, 2),
                   edge_features=np.ones((g.num_edges, 3)) * 0.25)
    full, _ = induced_subgraph(g, range(9))
    a = canonical_dumps(graph_to_obj(full))
    b = canonical_dumps(graph_to_obj(obj_to_graph(json.loads(a))))
    assert a == b


def test_edge_list_parsing():
    g = parse_edge_list("# comment\n0 1\n1 2\n")
    assert g.num_nodes == 3 and g.num_edges == 2
    g = parse_edge_list("n 5\n0 1\n")
    assert g.num_nodes == 5
    with pytest.raises(DomainError):
        parse_edge_list("0 1 2\n")


def test_canonical_float_format():
    assert canonical_dumps({"x": 0.1}) == '{"x":0.10000000000000001}'
    assert canonical_dumps([1.0, 2, None]) == "[1.0,2,null]"
