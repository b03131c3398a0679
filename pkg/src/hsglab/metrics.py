"""Effective resistance, commute times, connectivity and Table-style stats.

The resistance solver builds the Moore-Penrose pseudoinverse of the graph
Laplacian once (dense symmetric eigendecomposition, eigenvalues below
1e-10 * lambda_max treated as zero) and answers every pair query from
R_ab = L+_aa + L+_bb - 2 L+_ab.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from .connectivity import (FlowNetwork, average_node_connectivity,
                           graph_node_connectivity)
from .errors import DomainError, WalkCapExceeded
from .graph import Graph, adjacency_csr, degrees, is_connected
from .hsg import HsgGraph

WALK_STEP_CAP = 10_000_000


class ResistanceSolver:
    """Dense L+ factorization answering all-pairs resistance queries."""

    def __init__(self, g: Graph):
        if not is_connected(g):
            raise DomainError("effective resistance needs a connected graph")
        n = g.num_nodes
        lap = np.zeros((n, n))
        if g.num_edges:
            e = g.edges
            np.add.at(lap, (e[:, 0], e[:, 0]), 1.0)
            np.add.at(lap, (e[:, 1], e[:, 1]), 1.0)
            np.add.at(lap, (e[:, 0], e[:, 1]), -1.0)
            np.add.at(lap, (e[:, 1], e[:, 0]), -1.0)
        eigvals, eigvecs = np.linalg.eigh(lap)
        cutoff = 1e-10 * float(eigvals.max()) if n > 1 else 0.0
        safe = np.where(eigvals > cutoff, eigvals, 1.0)
        inv = np.where(eigvals > cutoff, 1.0 / safe, 0.0)
        self.laplacian_pinv = (eigvecs * inv) @ eigvecs.T
        self.node_count = n

    def effective_resistance(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        lp = self.laplacian_pinv
        return float(lp[a, a] + lp[b, b] - 2.0 * lp[a, b])

    def resistance_matrix(self) -> np.ndarray:
        d = np.diag(self.laplacian_pinv)
        return d[:, None] + d[None, :] - 2.0 * self.laplacian_pinv


def effective_resistance(s: ResistanceSolver, a: int, b: int) -> float:
    return s.effective_resistance(a, b)


def expected_commute_time(s: ResistanceSolver, edge_count: int,
                          a: int, b: int) -> float:
    """Commute-time identity: exactly 2 |E| R_ab."""
    return 2.0 * edge_count * s.effective_resistance(a, b)


def simulate_commute_time(g: Graph, a: int, b: int, trials: int,
                          seed: int, step_cap: int = WALK_STEP_CAP,
                          with_se: bool = False):
    """Monte Carlo mean round-trip a -> b -> a walk length.

    All trials advance in one vectorized batch; deterministic given seed.
    With `with_se` the result is a (mean, standard error) pair instead.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    if a == b:
        raise DomainError("commute time needs two distinct nodes")
    if not is_connected(g):
        raise DomainError("commute time needs a connected graph")
    deg = degrees(g)
    indptr, indices = adjacency_csr(g)
    maxdeg = int(deg.max())
    nbr = np.zeros((g.num_nodes, maxdeg), dtype=np.int64)
    for v in range(g.num_nodes):
        nbr[v, :deg[v]] = indices[indptr[v]:indptr[v + 1]]

    # Every live walker has taken the same number of steps, so a trial's
    # commute time is simply the iteration at which it finishes.
    rng = np.random.default_rng(seed)
    cur = np.full(trials, a, dtype=np.int64)
    reached = np.zeros(trials, dtype=bool)
    total = 0.0
    total_sq = 0.0
    it = 0
    while cur.size:
        it += 1
        cur = nbr[cur, rng.integers(0, deg[cur])]
        reached |= cur == b
        done = reached & (cur == a)
        finished = int(np.count_nonzero(done))
        if finished:
            total += it * finished
            total_sq += float(it) * it * finished
            keep = ~done
            cur = cur[keep]
            reached = reached[keep]
        if cur.size and it >= step_cap:
            completed = trials - cur.size
            partial = total / completed if completed else float("nan")
            raise WalkCapExceeded(
                f"walk cap {step_cap} exceeded after {completed}/{trials} trials",
                completed_trials=completed, partial_mean=partial)
    mean = total / trials
    if with_se:
        var = (total_sq - trials * mean * mean) / (trials - 1) if trials > 1 else 0.0
        se = math.sqrt(max(var, 0.0) / trials) if trials > 1 else float("inf")
        return mean, se
    return mean


@dataclass(frozen=True)
class MetricsReport:
    avg_nodes: float
    avg_edges: float
    diameter: float
    avg_shortest_path: float
    mean_effective_resistance: float
    mean_commute_time: float
    gnc: float
    anc: float
    pair_scope: str  # "original-pairs" or "all-pairs"

    CSV_HEADER = ("augmentation,coarsening,avg_nodes,avg_edges,diameter,"
                  "avg_shortest_path,mean_reff,mean_commute,gnc,anc")


def _scipy_csr(g: Graph):
    n = g.num_nodes
    e = g.edges
    data = np.ones(2 * e.shape[0])
    rows = np.concatenate((e[:, 0], e[:, 1]))
    cols = np.concatenate((e[:, 1], e[:, 0]))
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n))


def all_pairs_distances(g: Graph) -> np.ndarray:
    return shortest_path(_scipy_csr(g), method="D", unweighted=True)


def stats_report(h, workers: int = 1) -> MetricsReport:
    """Table-style statistics of a (possibly augmented) graph.

    Counts cover the full graph; every pairwise aggregate is computed on the
    full graph but averaged only over pairs of layer-0 (original) nodes.
    """
    if isinstance(h, HsgGraph):
        g = h.graph
        n0 = h.layer_ranges[0][1]
        scope = np.arange(n0, dtype=np.int64)
        pair_scope = "original-pairs"
    else:
        g = h
        scope = np.arange(g.num_nodes, dtype=np.int64)
        pair_scope = "all-pairs"
    if not is_connected(g):
        raise DomainError("stats need a connected graph")
    if scope.size < 2:
        raise DomainError("need at least 2 original nodes")

    dist = all_pairs_distances(g)[np.ix_(scope, scope)]
    iu = np.triu_indices(scope.size, k=1)
    pair_dists = dist[iu]

    solver = ResistanceSolver(g)
    res = solver.resistance_matrix()[np.ix_(scope, scope)][iu]
    mean_reff = float(res.mean())
    mean_commute = 2.0 * g.num_edges * mean_reff

    return MetricsReport(
        avg_nodes=float(g.num_nodes),
        avg_edges=float(g.num_edges),
        diameter=float(pair_dists.max()),
        avg_shortest_path=float(pair_dists.mean()),
        mean_effective_resistance=mean_reff,
        mean_commute_time=mean_commute,
        gnc=float(graph_node_connectivity(g)),
        anc=average_node_connectivity(g, scope=scope, workers=workers),
        pair_scope=pair_scope,
    )
