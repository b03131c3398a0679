"""Untrained synchronous message passing and receptive-field measurements."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import Graph, adjacency_csr, degrees
from .hsg import CoarseningSchedule, build_hsg

AGGREGATORS = ("sum", "mean", "max")
UPDATES = ("replace", "add", "halve-mix")


@dataclass(frozen=True)
class PropagationState:
    h: np.ndarray  # (n, d) float64
    t: int = 0


def mp_round(g: Graph, s: PropagationState, agg: str = "sum",
             update: str = "replace") -> PropagationState:
    """One synchronous round: every node aggregates its neighbors' round-t
    states, then applies the update. Isolated nodes keep their state."""
    if agg not in AGGREGATORS:
        raise DomainError(f"unknown aggregator {agg!r}")
    if update not in UPDATES:
        raise DomainError(f"unknown update {update!r}")
    h = np.asarray(s.h, dtype=np.float64)
    if h.shape[0] != g.num_nodes:
        raise DomainError("state dimension does not match graph")
    e = g.edges
    deg = degrees(g)
    if agg == "max":
        m = np.full_like(h, -np.inf)
        if e.shape[0]:
            np.maximum.at(m, e[:, 0], h[e[:, 1]])
            np.maximum.at(m, e[:, 1], h[e[:, 0]])
        m[deg == 0] = h[deg == 0]  # empty multiset: keep own state
    else:
        m = np.zeros_like(h)
        if e.shape[0]:
            np.add.at(m, e[:, 0], h[e[:, 1]])
            np.add.at(m, e[:, 1], h[e[:, 0]])
        if agg == "mean":
            nz = deg > 0
            m[nz] /= deg[nz, None]
    if update == "replace":
        out = np.where((deg > 0)[:, None], m, h)
    elif update == "add":
        out = h + np.where((deg > 0)[:, None], m, 0.0)
    else:  # halve-mix
        out = np.where((deg > 0)[:, None], (h + m) / 2.0, h)
    return PropagationState(h=out, t=s.t + 1)


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    if not 0 <= source < g.num_nodes:
        raise IndexError(f"source {source} out of range")
    indptr, indices = adjacency_csr(g)
    dist = np.full(g.num_nodes, -1, dtype=np.int64)
    dist[source] = 0
    queue = np.empty(g.num_nodes, dtype=np.int64)
    queue[0] = source
    qh, qt = 0, 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for w in indices[indptr[u]:indptr[u + 1]]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue[qt] = w
                qt += 1
    return dist


def receptive_field(g: Graph, source: int, max_rounds: int) -> list[int]:
    """informed(t) = number of nodes within BFS distance t, t = 0..max_rounds."""
    dist = bfs_distances(g, source)
    reach = dist[dist >= 0]
    return [int(np.sum(reach <= t)) for t in range(max_rounds + 1)]


def rounds_to_full_coverage(g: Graph, source: int) -> int:
    """Eccentricity of the source within its component."""
    dist = bfs_distances(g, source)
    return int(dist[dist >= 0].max())


def coverage_comparison(g: Graph, schedule: CoarseningSchedule,
                        sources: int, seed: int = 0) -> dict:
    """Rounds-to-full-coverage on g versus its HSG augmentation, over a
    seeded sample of source nodes."""
    from .graph import is_connected
    if not is_connected(g):
        raise DomainError("coverage comparison needs a connected graph")
    rng = np.random.default_rng(seed)
    count = min(sources, g.num_nodes)
    picks = rng.choice(g.num_nodes, size=count, replace=False)
    h = build_hsg(g, schedule)
    base = [rounds_to_full_coverage(g, int(s)) for s in picks]
    aug = [rounds_to_full_coverage(h.graph, int(s)) for s in picks]
    return {
        "sources": [int(s) for s in picks],
        "original_mean": float(np.mean(base)),
        "original_max": int(np.max(base)),
        "augmented_mean": float(np.mean(aug)),
        "augmented_max": int(np.max(aug)),
    }
