"""Undirected simple graphs with optional features and layer/kind tags.

Nodes are dense integers starting at 0. Edges are stored as a canonically
sorted (m, 2) int array with u < v in every row. Graphs are immutable after
construction; all queries are pure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError

# Edge kind codes.
ORIGINAL, HORIZONTAL, VERTICAL = 0, 1, 2
KIND_NAMES = ("original", "horizontal", "vertical")
KIND_CODES = {name: code for code, name in enumerate(KIND_NAMES)}


@dataclass(frozen=True, eq=False)
class Graph:
    num_nodes: int
    edges: np.ndarray                      # (m, 2) int64, u < v, lexsorted
    node_features: np.ndarray | None = None   # (n, d_v) float64
    edge_features: np.ndarray | None = None   # (m, d_e) float64, parallel to edges
    node_layer: np.ndarray = None              # (n,) int64, 0 = original
    edge_kind: np.ndarray = None               # (m,) int64 codes
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]


def make_graph(num_nodes, edges, node_features=None, edge_features=None,
               node_layer=None, edge_kind=None) -> Graph:
    """Validate and canonicalize inputs into an immutable Graph."""
    n = int(num_nodes)
    if n < 0:
        raise DomainError("num_nodes must be non-negative")
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    m = e.shape[0]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    if m:
        if lo.min() < 0 or hi.max() >= n:
            raise DomainError("edge endpoint out of range")
        if np.any(lo == hi):
            raise DomainError("self-loops are not allowed")
    order = np.lexsort((hi, lo))
    e = np.column_stack((lo[order], hi[order]))
    if m > 1 and np.any(np.all(e[1:] == e[:-1], axis=1)):
        raise DomainError("duplicate edges are not allowed")

    nf = None
    if node_features is not None:
        nf = np.asarray(node_features, dtype=np.float64).reshape(n, -1)
        nf.setflags(write=False)
    ef = None
    if edge_features is not None:
        ef = np.asarray(edge_features, dtype=np.float64)
        if ef.ndim == 1:
            ef = ef.reshape(m, 1)
        if ef.shape[0] != m:
            raise DomainError("edge feature row count does not match edges")
        ef = ef[order]
        ef.setflags(write=False)
    nl = (np.zeros(n, dtype=np.int64) if node_layer is None
          else np.asarray(node_layer, dtype=np.int64).reshape(n))
    ek = (np.zeros(m, dtype=np.int64) if edge_kind is None
          else np.asarray(edge_kind, dtype=np.int64).reshape(m)[order])
    if m and (ek.min() < 0 or ek.max() > VERTICAL):
        raise DomainError("unknown edge kind code")
    for arr in (e, nl, ek):
        arr.setflags(write=False)
    return Graph(n, e, nf, ef, nl, ek)


def graphs_equal(a: Graph, b: Graph) -> bool:
    """Structural equality on (n, E, features, tags)."""
    if a.num_nodes != b.num_nodes or not np.array_equal(a.edges, b.edges):
        return False
    for x, y in ((a.node_features, b.node_features),
                 (a.edge_features, b.edge_features)):
        if (x is None) != (y is None):
            return False
        if x is not None and not np.array_equal(x, y):
            return False
    return (np.array_equal(a.node_layer, b.node_layer)
            and np.array_equal(a.edge_kind, b.edge_kind))


def adjacency_csr(g: Graph):
    """CSR adjacency (indptr, indices) over both edge directions, cached."""
    cached = g._cache.get("csr")
    if cached is not None:
        return cached
    n = g.num_nodes
    e = g.edges
    heads = np.concatenate((e[:, 0], e[:, 1]))
    tails = np.concatenate((e[:, 1], e[:, 0]))
    order = np.argsort(heads, kind="stable")
    indices = tails[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, heads + 1, 1)
    np.cumsum(indptr, out=indptr)
    g._cache["csr"] = (indptr, indices)
    return indptr, indices


def degrees(g: Graph) -> np.ndarray:
    d = np.zeros(g.num_nodes, dtype=np.int64)
    if g.num_edges:
        np.add.at(d, g.edges[:, 0], 1)
        np.add.at(d, g.edges[:, 1], 1)
    return d


def neighbors(g: Graph, v: int) -> set[int]:
    """The open neighborhood {u | {u, v} in E}."""
    if not 0 <= v < g.num_nodes:
        raise IndexError(f"node {v} out of range (n={g.num_nodes})")
    indptr, indices = adjacency_csr(g)
    return set(int(u) for u in indices[indptr[v]:indptr[v + 1]])


@dataclass(frozen=True)
class DegreeSummary:
    mean_degree: float
    # layer -> {"horizontal": mean, "vertical": mean}; layer-0 "horizontal"
    # counts original edges.
    per_layer: dict


def degree_summary(g: Graph) -> DegreeSummary:
    if g.num_nodes == 0:
        raise DomainError("degree summary of an empty graph is undefined")
    mean = 2.0 * g.num_edges / g.num_nodes
    layers = np.unique(g.node_layer)
    per_layer = {}
    e, ek, nl = g.edges, g.edge_kind, g.node_layer
    for layer in layers:
        layer = int(layer)
        members = nl == layer
        size = int(members.sum())
        horiz_kind = ORIGINAL if layer == 0 else HORIZONTAL
        horiz = int(np.sum((ek == horiz_kind) & members[e[:, 0]] & members[e[:, 1]]))
        vert_mask = ek == VERTICAL
        incident = members[e[:, 0]].astype(np.int64) + members[e[:, 1]]
        vert = int(np.sum(incident[vert_mask]))
        per_layer[layer] = {
            "horizontal": 2.0 * horiz / size,
            "vertical": vert / size,
        }
    return DegreeSummary(mean_degree=mean, per_layer=per_layer)


def connected_components(g: Graph) -> list[set[int]]:
    """Maximal connected node sets, found by BFS, ordered by smallest member."""
    labels = component_labels(g)
    comps = {}
    for v, c in enumerate(labels):
        comps.setdefault(int(c), set()).add(v)
    return [comps[c] for c in sorted(comps, key=lambda c: min(comps[c]))]


def component_labels(g: Graph) -> np.ndarray:
    """Per-node component id via BFS; ids ordered by first-seen node."""
    n = g.num_nodes
    indptr, indices = adjacency_csr(g)
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    comp = 0
    for start in range(n):
        if labels[start] != -1:
            continue
        labels[start] = comp
        queue[0] = start
        qh, qt = 0, 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for w in indices[indptr[u]:indptr[u + 1]]:
                if labels[w] == -1:
                    labels[w] = comp
                    queue[qt] = w
                    qt += 1
        comp += 1
    return labels


def is_connected(g: Graph) -> bool:
    if g.num_nodes <= 1:
        return True
    return bool(np.all(component_labels(g) == 0))


class SubgraphResult(NamedTuple):
    graph: Graph
    node_map: np.ndarray  # old index -> new index, -1 for dropped nodes


def induced_subgraph(g: Graph, keep) -> SubgraphResult:
    """Subgraph on `keep`, densely reindexed in ascending old-index order."""
    keep_arr = np.unique(np.asarray(sorted(keep), dtype=np.int64))
    if keep_arr.size and (keep_arr.min() < 0 or keep_arr.max() >= g.num_nodes):
        raise IndexError("keep set contains out-of-range nodes")
    node_map = np.full(g.num_nodes, -1, dtype=np.int64)
    node_map[keep_arr] = np.arange(keep_arr.size)
    e = g.edges
    mask = (node_map[e[:, 0]] >= 0) & (node_map[e[:, 1]] >= 0) if e.size else \
        np.zeros(0, dtype=bool)
    sub_edges = node_map[e[mask]]
    sub = make_graph(
        keep_arr.size, sub_edges,
        node_features=None if g.node_features is None else g.node_features[keep_arr],
        edge_features=None if g.edge_features is None else g.edge_features[mask],
        node_layer=g.node_layer[keep_arr],
        edge_kind=g.edge_kind[mask],
    )
    return SubgraphResult(sub, node_map)
