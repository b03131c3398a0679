"""Node partitions (random and balanced edge-cut) and quotient graphs.

The balanced partitioner is a deterministic multilevel heuristic: heavy-edge
matching coarsens the graph, a greedy region-growing pass seeds the q-way
partition on the coarsest level, and boundary moves refine it while
uncoarsening. All randomness comes from the caller-supplied seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import Graph, make_graph


@dataclass(frozen=True)
class Partition:
    cluster_of: np.ndarray  # (n,) int64 in [0, q)
    q: int
    edge_cut: int
    max_imbalance: float    # largest cluster size / (n / q)


def _finish_partition(g: Graph, cluster_of: np.ndarray, q: int) -> Partition:
    cluster_of = np.asarray(cluster_of, dtype=np.int64)
    sizes = np.bincount(cluster_of, minlength=q)
    if np.any(sizes == 0):
        raise DomainError("partition has an empty cluster")
    cut = edge_cut(g, cluster_of)
    imbalance = float(sizes.max() * q / g.num_nodes)
    cluster_of = cluster_of.copy()
    cluster_of.setflags(write=False)
    return Partition(cluster_of, q, cut, imbalance)


def edge_cut(g: Graph, cluster_of: np.ndarray) -> int:
    if g.num_edges == 0:
        return 0
    e = g.edges
    return int(np.sum(cluster_of[e[:, 0]] != cluster_of[e[:, 1]]))


def partition_random(g: Graph, r: float, seed: int) -> Partition:
    """Seeded uniform shuffle + round-robin slicing; cluster sizes differ <= 1."""
    n = g.num_nodes
    if n < 1:
        raise DomainError("cannot partition an empty graph")
    if not 0.0 < r <= 1.0:
        raise DomainError("coarsening ratio must be in (0, 1]")
    q = max(1, int(math.floor(r * n)))
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    cluster_of = np.empty(n, dtype=np.int64)
    cluster_of[perm] = np.arange(n, dtype=np.int64) % q
    return _finish_partition(g, cluster_of, q)


def single_cluster_partition(g: Graph) -> Partition:
    """The degenerate q = 1 partition (the virtual-node step)."""
    return _finish_partition(g, np.zeros(g.num_nodes, dtype=np.int64), 1)


# --- balanced edge-cut partitioner -----------------------------------------

def _weighted_adjacency(n, edges, weights):
    adj = [dict() for _ in range(n)]
    for (u, v), w in zip(edges, weights):
        adj[u][v] = adj[u].get(v, 0) + w
        adj[v][u] = adj[v].get(u, 0) + w
    return adj


def _heavy_edge_matching(adj, node_w, limit_w, rng):
    n = len(adj)
    match = np.full(n, -1, dtype=np.int64)
    for u in rng.permutation(n):
        u = int(u)
        if match[u] != -1:
            continue
        best, best_w = -1, 0
        for v, w in adj[u].items():
            if match[v] != -1 or node_w[u] + node_w[v] > limit_w:
                continue
            if w > best_w or (w == best_w and (best == -1 or v < best)):
                best, best_w = v, w
        if best != -1:
            match[u] = best
            match[best] = u
    return match


def _contract(adj, node_w, match):
    n = len(adj)
    coarse_id = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for u in range(n):
        if coarse_id[u] != -1:
            continue
        coarse_id[u] = nxt
        if match[u] != -1:
            coarse_id[match[u]] = nxt
        nxt += 1
    coarse_w = np.zeros(nxt, dtype=np.int64)
    for u in range(n):
        coarse_w[coarse_id[u]] += node_w[u]
    coarse_adj = [dict() for _ in range(nxt)]
    for u in range(n):
        cu = coarse_id[u]
        for v, w in adj[u].items():
            cv = coarse_id[v]
            if cu < cv:
                coarse_adj[cu][cv] = coarse_adj[cu].get(cv, 0) + w
                coarse_adj[cv][cu] = coarse_adj[cv].get(cu, 0) + w
    return coarse_adj, coarse_w, coarse_id


def _far_unassigned(adj, assign, start):
    """Farthest unassigned node from `start` via BFS over unassigned nodes
    (pseudo-peripheral seed); ties go to the lowest index."""
    dist = {start: 0}
    frontier = [start]
    far, far_d = start, 0
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adj[u]):
                if assign[v] == -1 and v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
                    if dist[v] > far_d or (dist[v] == far_d and v < far):
                        far, far_d = v, dist[v]
        frontier = nxt
    return far


def _grow_regions(adj, node_w, q, cap, rng):
    n = len(adj)
    assign = np.full(n, -1, dtype=np.int64)
    cluster_w = np.zeros(q, dtype=np.int64)
    total = int(node_w.sum())
    seed_order = rng.permutation(n)
    seed_pos = 0
    for k in range(q):
        while seed_pos < n and assign[seed_order[seed_pos]] != -1:
            seed_pos += 1
        if seed_pos >= n:
            break
        seed = _far_unassigned(adj, assign, int(seed_order[seed_pos]))
        assign[seed] = k
        cluster_w[k] = node_w[seed]
        remaining_clusters = q - k
        target = (total - cluster_w[:k].sum()) / remaining_clusters
        # Grow by strongest attachment to the region; ties prefer fewer
        # external edges, then lowest index.
        boundary = {}
        for v, w in adj[seed].items():
            if assign[v] == -1:
                boundary[v] = boundary.get(v, 0) + w
        while cluster_w[k] < target and boundary:
            best, best_key = -1, None
            for v, w_in in boundary.items():
                w_ext = sum(adj[v].values()) - w_in
                key = (-w_in, w_ext, v)
                if best_key is None or key < best_key:
                    best, best_key = v, key
            if cluster_w[k] + node_w[best] > cap:
                del boundary[best]
                continue
            assign[best] = k
            cluster_w[k] += node_w[best]
            for v, w in adj[best].items():
                if assign[v] == -1:
                    boundary[v] = boundary.get(v, 0) + w
            del boundary[best]
    # Leftovers: min-weight adjacent cluster fitting the cap, else global min.
    for u in range(n):
        if assign[u] != -1:
            continue
        adj_clusters = sorted({int(assign[v]) for v in adj[u] if assign[v] != -1})
        choice = -1
        for c in sorted(adj_clusters, key=lambda c: (cluster_w[c], c)):
            if cluster_w[c] + node_w[u] <= cap:
                choice = c
                break
        if choice == -1:
            choice = int(np.lexsort((np.arange(q), cluster_w))[0])
        assign[u] = choice
        cluster_w[choice] += node_w[u]
    return assign, cluster_w


def _refine(adj, node_w, assign, cluster_w, cap):
    """One greedy boundary pass: move a node iff it strictly reduces the cut
    and keeps every cluster within the cap and non-empty."""
    counts = np.bincount(assign, minlength=len(cluster_w))
    for u in range(len(adj)):
        c = int(assign[u])
        if counts[c] <= 1:
            continue
        w_to = {}
        for v, w in adj[u].items():
            w_to[int(assign[v])] = w_to.get(int(assign[v]), 0) + w
        w_c = w_to.get(c, 0)
        best_d, best_gain = -1, 0
        for d in sorted(w_to):
            if d == c:
                continue
            gain = w_to[d] - w_c
            if gain > best_gain and cluster_w[d] + node_w[u] <= cap:
                best_d, best_gain = d, gain
        if best_d != -1:
            assign[u] = best_d
            cluster_w[c] -= node_w[u]
            cluster_w[best_d] += node_w[u]
            counts[c] -= 1
            counts[best_d] += 1
    return assign, cluster_w


def _rebalance(adj, assign, cluster_w, cap):
    """Unit-weight rebalance used at the finest level as a safety net."""
    counts = cluster_w  # node_w == 1 at the finest level
    while counts.max() > cap:
        c = int(counts.argmax())
        members = np.flatnonzero(assign == c)
        target = int(np.lexsort((np.arange(len(counts)), counts))[0])
        best, best_key = -1, None
        for u in members:
            u = int(u)
            w_c = sum(w for v, w in adj[u].items() if assign[v] == c)
            w_t = sum(w for v, w in adj[u].items() if assign[v] == target)
            key = (w_c - w_t, u)
            if best_key is None or key < best_key:
                best, best_key = u, key
        assign[best] = target
        counts[c] -= 1
        counts[target] += 1
    return assign


def partition_balanced_cut(g: Graph, q: int, epsilon: float = 0.1,
                           seed: int = 0) -> Partition:
    """Multilevel balanced partition minimizing the edge cut.

    Every cluster is non-empty and no cluster exceeds
    (1 + epsilon) * ceil(n / q) nodes. Deterministic given the seed.
    """
    n = g.num_nodes
    if not 1 <= q <= n:
        raise DomainError(f"q={q} outside [1, n={n}]")
    if epsilon < 0:
        raise DomainError("epsilon must be non-negative")
    if q == n:
        return _finish_partition(g, np.arange(n, dtype=np.int64), q)
    if q == 1:
        return single_cluster_partition(g)

    cap = (1.0 + epsilon) * math.ceil(n / q)
    rng = np.random.default_rng(seed)
    adj = _weighted_adjacency(n, g.edges.tolist(), [1] * g.num_edges)
    node_w = np.ones(n, dtype=np.int64)
    levels = []  # (adj, node_w, coarse_id) stack for uncoarsening
    threshold = max(2 * q, 64)
    while len(adj) > threshold:
        match = _heavy_edge_matching(adj, node_w, cap, rng)
        coarse_adj, coarse_w, coarse_id = _contract(adj, node_w, match)
        if len(coarse_adj) >= len(adj):
            break
        levels.append((adj, node_w, coarse_id))
        adj, node_w = coarse_adj, coarse_w

    assign, cluster_w = _grow_regions(adj, node_w, q, cap, rng)
    assign, cluster_w = _refine(adj, node_w, assign, cluster_w, cap)
    while levels:
        fine_adj, fine_w, coarse_id = levels.pop()
        assign = assign[coarse_id]
        cluster_w = np.bincount(assign, weights=fine_w, minlength=q).astype(np.int64)
        adj, node_w = fine_adj, fine_w
        assign, cluster_w = _refine(adj, node_w, assign, cluster_w, cap)
    assign = _rebalance(adj, assign, cluster_w, cap)
    return _finish_partition(g, assign, q)


# --- quotient graphs and reduction traces -----------------------------------

def quotient(g: Graph, p: Partition) -> Graph:
    """Contract clusters to super-nodes; cross edges collapse to one edge."""
    if p.cluster_of.shape[0] != g.num_nodes:
        raise DomainError("partition does not match graph")
    c = p.cluster_of
    if g.num_edges:
        cu = c[g.edges[:, 0]]
        cv = c[g.edges[:, 1]]
        mask = cu != cv
        lo = np.minimum(cu[mask], cv[mask])
        hi = np.maximum(cu[mask], cv[mask])
        keys = np.unique(lo * p.q + hi)
        new_edges = np.column_stack((keys // p.q, keys % p.q))
    else:
        new_edges = np.zeros((0, 2), dtype=np.int64)
    return make_graph(p.q, new_edges)


@dataclass(frozen=True)
class ReductionTrace:
    node_counts: tuple      # per layer, layer 0 first
    edge_counts: tuple
    r: tuple                # per-step node ratios, < 1 when shrinking
    c: tuple                # per-step edge ratios; None when undefined
    R: tuple                # cumulative products of r
    C: tuple                # cumulative products of c; None once undefined


def reduction_trace(layers) -> ReductionTrace:
    """Per-step and cumulative node/edge reduction factors.

    Ratios are oriented so that R(i) * n equals the node count of layer i.
    """
    if len(layers) < 2:
        raise DomainError("reduction trace needs at least 2 layers")
    nodes = tuple(g.num_nodes for g in layers)
    edges = tuple(g.num_edges for g in layers)
    r, c, R, C = [], [], [], []
    cum_r, cum_c = 1.0, 1.0
    for i in range(1, len(layers)):
        ri = nodes[i] / nodes[i - 1]
        cum_r *= ri
        r.append(ri)
        R.append(cum_r)
        if edges[i - 1] == 0 or cum_c is None:
            c.append(None)
            C.append(None)
            cum_c = None
        else:
            ci = edges[i] / edges[i - 1]
            cum_c *= ci
            c.append(ci)
            C.append(cum_c)
    return ReductionTrace(nodes, edges, tuple(r), tuple(c), tuple(R), tuple(C))
