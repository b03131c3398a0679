import itertools

import numpy as np
import pytest

from hsglab import (DomainError, ResistanceSolver, build_hsg, cycle_graph,
                    expected_commute_time, make_graph, parse_schedule,
                    path_graph, simulate_commute_time, stats_report)
from hsglab.metrics import all_pairs_distances

from conftest import random_connected_graph


def laplacian_pinv_oracle(g):
    """Independent route: numpy's generic pseudoinverse of the Laplacian."""
    n = g.num_nodes
    lap = np.zeros((n, n))
    for u, v in g.edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    return np.linalg.pinv(lap)


def test_resistance_examples(triangle):
    assert ResistanceSolver(make_graph(2, [(0, 1)])).effective_resistance(0, 1) \
        == pytest.approx(1.0, abs=1e-12)
    assert ResistanceSolver(path_graph(3)).effective_resistance(0, 2) \
        == pytest.approx(2.0, abs=1e-12)
    s = ResistanceSolver(triangle)
    for a, b in itertools.combinations(range(3), 2):
        assert s.effective_resistance(a, b) == pytest.approx(2 / 3, abs=1e-12)


def test_resistance_matches_brute_force_pinv():
    for seed in range(5):
        g = random_connected_graph(12, 0.3, seed)
        s = ResistanceSolver(g)
        lp = laplacian_pinv_oracle(g)
        for a, b in itertools.combinations(range(12), 2):
            e = np.zeros(12)
            e[a], e[b] = 1.0, -1.0
            assert s.effective_resistance(a, b) == pytest.approx(
                float(e @ lp @ e), abs=1e-9)


def test_solver_invariants():
    g = random_connected_graph(15, 0.25, 3)
    s = ResistanceSolver(g)
    lap = np.zeros((15, 15))
    for u, v in g.edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    lp = s.laplacian_pinv
    err = np.linalg.norm(lap @ lp @ lap - lap) / np.linalg.norm(lap)
    assert err < 1e-8
    assert np.max(np.abs(lp.sum(axis=1))) < 1e-8


def test_resistance_rejects_disconnected():
    with pytest.raises(DomainError):
        ResistanceSolver(make_graph(4, [(0, 1), (2, 3)]))


def test_resistance_is_a_metric():
    for seed in range(8):
        g = random_connected_graph(12, 0.3, seed + 50)
        r = ResistanceSolver(g).resistance_matrix()
        assert np.allclose(r, r.T)
        assert np.all(r >= -1e-12)
        for a, b, c in itertools.combinations(range(12), 3):
            assert r[a, c] <= r[a, b] + r[b, c] + 1e-9


def test_rayleigh_monotonicity():
    rng = np.random.default_rng(11)
    for seed in range(5):
        g = random_connected_graph(12, 0.3, seed + 100)
        before = ResistanceSolver(g).resistance_matrix()
        non_edges = [p for p in itertools.combinations(range(12), 2)
                     if not any((p[0], p[1]) == (u, v) for u, v in g.edges)]
        if not non_edges:
            continue
        extra = non_edges[rng.integers(len(non_edges))]
        g2 = make_graph(12, np.vstack((g.edges, extra)))
        after = ResistanceSolver(g2).resistance_matrix()
        assert np.all(after <= before + 1e-9)


def test_expected_commute_time(triangle):
    k2 = make_graph(2, [(0, 1)])
    assert expected_commute_time(ResistanceSolver(k2), 1, 0, 1) == \
        pytest.approx(2.0, abs=1e-12)
    s = ResistanceSolver(triangle)
    assert expected_commute_time(s, 3, 0, 1) == pytest.approx(4.0, abs=1e-12)
    p3 = path_graph(3)
    assert expected_commute_time(ResistanceSolver(p3), 2, 0, 2) == \
        pytest.approx(8.0, abs=1e-12)


def test_simulated_commute_matches_theory(triangle):
    assert simulate_commute_time(make_graph(2, [(0, 1)]), 0, 1, 500, 0) == 2.0
    assert simulate_commute_time(triangle, 0, 1, 100_000, 1) == \
        pytest.approx(4.0, abs=0.1)
    assert simulate_commute_time(path_graph(3), 0, 2, 100_000, 2) == \
        pytest.approx(8.0, abs=0.2)


def test_simulated_commute_deterministic(triangle):
    a = simulate_commute_time(triangle, 0, 2, 1000, 42)
    b = simulate_commute_time(triangle, 0, 2, 1000, 42)
    assert a == b


def test_walk_cap():
    from hsglab import WalkCapExceeded
    with pytest.raises(WalkCapExceeded):
        simulate_commute_time(path_graph(30), 0, 29, 10, seed=0, step_cap=5)


def test_stats_report_path4():
    rep = stats_report(path_graph(4))
    assert rep.diameter == 3.0
    assert rep.avg_shortest_path == pytest.approx(10 / 6)
    assert rep.mean_commute_time == pytest.approx(
        2 * 3 * rep.mean_effective_resistance, rel=1e-9)


def test_stats_report_path4_virtual_node():
    h = build_hsg(path_graph(4), parse_schedule("vn"))
    rep = stats_report(h)
    assert rep.pair_scope == "original-pairs"
    assert rep.diameter == 2.0
    assert rep.avg_shortest_path == pytest.approx(1.5)
    assert rep.avg_nodes == 5.0


def test_vn_reduces_resistance_on_trees():
    from hsglab import random_tree
    for seed in range(5):
        t = random_tree(12, seed)
        base = stats_report(t).mean_effective_resistance
        aug = stats_report(build_hsg(t, parse_schedule("vn")))
        assert aug.mean_effective_resistance < base


def test_stats_rejects_disconnected():
    with pytest.raises(DomainError):
        stats_report(make_graph(4, [(0, 1), (2, 3)]))


def test_all_pairs_distances():
    d = all_pairs_distances(path_graph(5))
    assert d[0, 4] == 4.0 and d[1, 3] == 2.0
