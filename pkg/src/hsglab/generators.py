"""Deterministic synthetic graph generators."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import Graph, make_graph


@dataclass(frozen=True)
class ErdosRenyiSpec:
    n: int
    p: float | None = None
    beta: float | None = None  # p = n ** (-beta)
    seed: int = 0

    def __post_init__(self):
        if (self.p is None) == (self.beta is None):
            raise DomainError("supply exactly one of p or beta")
        if self.resolved_p() < 0 or self.resolved_p() > 1:
            raise DomainError("edge probability outside [0, 1]")

    def resolved_p(self) -> float:
        if self.p is not None:
            return float(self.p)
        return float(self.n) ** (-float(self.beta))


def er_edge_array(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Sampled (m, 2) edge array of G(n, p); each pair i.i.d. with prob p."""
    npairs = n * (n - 1) // 2
    if npairs == 0 or p <= 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    if p >= 1.0:
        idx = np.arange(npairs, dtype=np.int64)
    else:
        idx = np.flatnonzero(rng.random(npairs) < p).astype(np.int64)
    # Flat upper-triangle index -> (i, j): row offsets are cumulative row sizes.
    row_sizes = np.arange(n - 1, 0, -1, dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(row_sizes)))
    i = np.searchsorted(offsets, idx, side="right") - 1
    j = idx - offsets[i] + i + 1
    return np.column_stack((i, j))


def gen_erdos_renyi(spec: ErdosRenyiSpec) -> Graph:
    rng = np.random.default_rng(spec.seed)
    return make_graph(spec.n, er_edge_array(spec.n, spec.resolved_p(), rng))


def path_graph(n: int) -> Graph:
    ids = np.arange(n - 1, dtype=np.int64)
    return make_graph(n, np.column_stack((ids, ids + 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs at least 3 nodes")
    ids = np.arange(n, dtype=np.int64)
    return make_graph(n, np.column_stack((ids, (ids + 1) % n)))


def grid_graph(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise DomainError("grid needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return make_graph(rows * cols, edges)


def star_graph(n: int) -> Graph:
    """Center 0 plus n - 1 leaves."""
    if n < 2:
        raise DomainError("star needs at least 2 nodes")
    leaves = np.arange(1, n, dtype=np.int64)
    return make_graph(n, np.column_stack((np.zeros(n - 1, dtype=np.int64), leaves)))


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random labelled tree from a seeded Pruefer sequence."""
    if n < 1:
        raise DomainError("tree needs at least one node")
    if n == 1:
        return make_graph(1, [])
    if n == 2:
        return make_graph(2, [(0, 1)])
    rng = np.random.default_rng(seed)
    prufer = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for x in prufer:
        degree[x] += 1
    edges = []
    import heapq
    leaves = [int(v) for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, int(x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, int(x))
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return make_graph(n, edges)


def connected_er(n: int, seed: int = 0, factor: float = 2.0) -> Graph:
    """ER graph at p = factor * ln(n) / n, resampled until connected."""
    p = min(1.0, factor * math.log(n) / n)
    for attempt in range(100):
        g = gen_erdos_renyi(ErdosRenyiSpec(n=n, p=p, seed=seed * 100003 + attempt))
        from .graph import is_connected
        if is_connected(g):
            return g
    raise DomainError(f"no connected sample at n={n}, p={p}")
