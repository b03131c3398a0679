"""Empirical checks of the structural claims on Erdos-Renyi graphs.

Each check runs seeded independent trials (per-trial seeds derived from the
base seed) and aggregates with order-independent sums, so results do not
depend on scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .generators import er_edge_array
from .graph import Graph, make_graph
from .hsg import build_hsg, uniform_schedule
from .serialize import graph_to_obj

SLOPE_DEAD_BAND = 0.1


def _trial_rng(seed: int, *indices) -> np.random.Generator:
    return np.random.default_rng([seed & 0x7FFFFFFF, *(int(i) for i in indices)])


# --- size / diameter / layer bounds ------------------------------------------

def verify_size_bounds(n_values, r: float, trials: int, seed: int = 0,
                       p: float | None = None) -> dict:
    """Build uniform-ratio HSGs down to one node and check the size, layer
    and diameter bounds; any violation is recorded with the serialized graph.
    """
    if not 0.0 < r < 1.0:
        raise DomainError("r must be in (0, 1)")
    from scipy.sparse.csgraph import shortest_path
    from .metrics import all_pairs_distances, _scipy_csr
    counterexamples = []
    checked = 0
    for n in n_values:
        pn = p if p is not None else min(1.0, 2.0 * math.log(n) / n)
        node_bound = n / (1.0 - r)
        layer_bound = math.ceil(math.log(n) / -math.log(r))
        for t in range(trials):
            rng = _trial_rng(seed, n, t)
            g = make_graph(n, er_edge_array(n, pn, rng))
            h = build_hsg(g, uniform_schedule(n, r, "random",
                                              base_seed=seed + 1000 * t))
            # Twice any node's eccentricity bounds the diameter from above;
            # one BFS from the apex usually certifies the bound, and only an
            # inconclusive certificate needs the full distance matrix.
            apex = h.graph.num_nodes - 1
            ecc = float(np.max(shortest_path(_scipy_csr(h.graph), method="D",
                                             unweighted=True, indices=apex)))
            diam_ok = 2.0 * ecc <= 2 * h.num_layers
            if not diam_ok:
                diam_ok = (float(np.max(all_pairs_distances(h.graph)))
                           <= 2 * h.num_layers)
            per_layer_edges = [
                int(np.sum((h.graph.edge_kind == 1)
                           & (h.graph.node_layer[h.graph.edges[:, 0]] == i)))
                for i in range(1, h.num_layers + 1)]
            violations = []
            if h.graph.num_nodes > node_bound:
                violations.append("node-count bound")
            if h.num_layers > layer_bound:
                violations.append("layer-count bound")
            if not diam_ok:
                violations.append("diameter bound")
            if any(me > g.num_edges for me in per_layer_edges):
                violations.append("per-layer edge bound")
            checked += 1
            if violations:
                counterexamples.append({
                    "n": n, "trial": t, "violations": violations,
                    "graph": graph_to_obj(g),
                })
    return {
        "r": r, "trials": trials, "checked": checked,
        "pass": not counterexamples,
        "counterexamples": counterexamples,
    }


# --- super-edge probability ---------------------------------------------------

@dataclass(frozen=True)
class CrossEdgeResult:
    predicted: float
    measured: float
    samples: int


def cross_edge_probability(n: int, p: float, r: float, trials: int,
                           seed: int = 0) -> CrossEdgeResult:
    """Fraction of super-node pairs joined by >= 1 crossing edge under random
    equal partitions, against the closed form 1 - (1-p)^(1/r^2)."""
    q = max(1, int(math.floor(r * n)))
    predicted = 1.0 - (1.0 - p) ** (1.0 / r ** 2)
    hits = 0
    samples = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        edges = er_edge_array(n, p, rng)
        perm = rng.permutation(n)
        cluster = np.empty(n, dtype=np.int64)
        cluster[perm] = np.arange(n, dtype=np.int64) % q
        if edges.shape[0]:
            cu = cluster[edges[:, 0]]
            cv = cluster[edges[:, 1]]
            inter = cu != cv
            lo = np.minimum(cu[inter], cv[inter])
            hi = np.maximum(cu[inter], cv[inter])
            hits += np.unique(lo * q + hi).size
        samples += q * (q - 1) // 2
    return CrossEdgeResult(predicted=predicted,
                           measured=hits / samples if samples else 0.0,
                           samples=samples)


# --- degree regimes -----------------------------------------------------------

@dataclass(frozen=True)
class RegimeResult:
    beta: float
    n_values: tuple
    ratios: tuple          # per-n mean of E[d1]/E[d0]
    std_errs: tuple
    slope: float           # log-log least-squares slope
    verdict: str           # vanishing | constant | diverging


def degree_regime(beta: float, n_values, trials: int, seed: int = 0) -> RegimeResult:
    """Measure the horizontal-degree ratio between the first support layer
    and the input under random equal coarsening at r = n / (m + n)."""
    n_values = tuple(int(n) for n in n_values)
    if len(n_values) < 4 or list(n_values) != sorted(n_values):
        raise DomainError("need >= 4 increasing n values")
    if beta < 0:
        raise DomainError("beta must be non-negative")
    means, errs = [], []
    for n in n_values:
        p = float(n) ** (-beta)
        vals = []
        for t in range(trials):
            rng = _trial_rng(seed, n, t)
            edges = er_edge_array(n, p, rng)
            m = edges.shape[0]
            if m == 0:
                continue
            r = n / (m + n)
            q = max(1, int(math.floor(r * n)))
            perm = rng.permutation(n)
            cluster = np.empty(n, dtype=np.int64)
            cluster[perm] = np.arange(n, dtype=np.int64) % q
            cu = cluster[edges[:, 0]]
            cv = cluster[edges[:, 1]]
            inter = cu != cv
            lo = np.minimum(cu[inter], cv[inter])
            hi = np.maximum(cu[inter], cv[inter])
            e1 = np.unique(lo * q + hi).size
            deg1 = 2.0 * e1 / q
            deg0 = 2.0 * m / n
            vals.append(deg1 / deg0)
        if not vals:
            raise DomainError(f"all trials at n={n} produced empty graphs")
        vals = np.asarray(vals)
        means.append(float(vals.mean()))
        errs.append(float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0)
    slope = float(np.polyfit(np.log(n_values), np.log(means), 1)[0])
    if slope < -SLOPE_DEAD_BAND:
        verdict = "vanishing"
    elif slope > SLOPE_DEAD_BAND:
        verdict = "diverging"
    else:
        verdict = "constant"
    return RegimeResult(beta=beta, n_values=n_values, ratios=tuple(means),
                        std_errs=tuple(errs), slope=slope, verdict=verdict)


# --- degree-preservation conditions -------------------------------------------

def check_degree_conditions(trace, g: Graph, band: float = 4.0) -> dict:
    """Report r(i) * m / n and C(i) / R(i) per layer; layers whose C/R ratio
    exceeds the band are flagged as degree-inflating."""
    n, m = g.num_nodes, g.num_edges
    layers = []
    flagged = []
    for i, (ri, Ri, Ci) in enumerate(zip(trace.r, trace.R, trace.C), start=1):
        entry = {
            "layer": i,
            "r_times_m_over_n": ri * m / n if n else None,
            "c_over_r": None if Ci is None else Ci / Ri,
        }
        if entry["c_over_r"] is not None and entry["c_over_r"] > band:
            entry["flag"] = "degree-inflating"
            flagged.append(i)
        layers.append(entry)
    return {"band": band, "layers": layers, "flagged": flagged,
            "pass": not flagged}
