"""Assembly of hierarchically coarsened support layers into one graph.

A schedule step is `m:<ratio>` (balanced cut), `r:<ratio>` (random) or `vn`
(contract everything to a single super-node), e.g. ``m:0.25,vn``. Building
adds every support layer's horizontal edges, one vertical edge per node to
its parent, and keeps all original edges.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import coarsen
from .errors import DomainError
from .graph import (Graph, HORIZONTAL, ORIGINAL, VERTICAL, make_graph)

_METHODS = ("random", "balanced_cut", "external", "vn")


@dataclass(frozen=True)
class ScheduleStep:
    method: str                 # one of _METHODS
    ratio: float | None = None  # in (0, 1]; None for vn/external
    seed: int = 0
    partition: coarsen.Partition | None = None

    def __post_init__(self):
        if self.method not in _METHODS:
            raise DomainError(f"unknown schedule method {self.method!r}")
        if self.method in ("random", "balanced_cut"):
            if self.ratio is None or not 0.0 < self.ratio <= 1.0:
                raise DomainError("ratio must be in (0, 1]")
        if self.method == "external" and self.partition is None:
            raise DomainError("external step needs a partition")


@dataclass(frozen=True)
class CoarseningSchedule:
    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise DomainError("schedule must have at least one step")

    def label(self) -> str:
        out = []
        for s in self.steps:
            if s.method == "vn":
                out.append("vn")
            elif s.method == "random":
                out.append(f"r:{s.ratio:g}")
            elif s.method == "balanced_cut":
                out.append(f"m:{s.ratio:g}")
            else:
                out.append("ext")
        return ",".join(out)


def parse_schedule(text: str, base_seed: int = 0) -> CoarseningSchedule:
    """Parse the CLI schedule grammar; step i gets seed base_seed + i."""
    steps = []
    for i, token in enumerate(t.strip() for t in text.split(",")):
        if token == "vn":
            steps.append(ScheduleStep("vn", seed=base_seed + i))
            continue
        if ":" not in token:
            raise DomainError(f"bad schedule step {token!r}")
        kind, _, val = token.partition(":")
        method = {"m": "balanced_cut", "r": "random"}.get(kind)
        if method is None:
            raise DomainError(f"bad schedule step {token!r}")
        try:
            ratio = float(val)
        except ValueError as exc:
            raise DomainError(f"bad ratio in step {token!r}") from exc
        steps.append(ScheduleStep(method, ratio, seed=base_seed + i))
    return CoarseningSchedule(tuple(steps))


def uniform_schedule(n: int, r: float, method: str = "random",
                     base_seed: int = 0) -> CoarseningSchedule:
    """Repeat ratio-r steps until a graph of n nodes reaches a single node."""
    if not 0.0 < r < 1.0:
        raise DomainError("uniform ratio must be in (0, 1)")
    steps = []
    cur = n
    i = 0
    while cur > 1:
        cur = max(1, int(math.floor(r * cur)))
        steps.append(ScheduleStep(method, r, seed=base_seed + i))
        i += 1
    if not steps:
        steps.append(ScheduleStep("vn", seed=base_seed))
    return CoarseningSchedule(tuple(steps))


@dataclass(frozen=True)
class HsgGraph:
    graph: Graph
    layer_ranges: tuple          # per layer [start, end) node index ranges
    phi: np.ndarray              # parent node index; -1 on the top layer
    num_layers: int              # Z (support layers, excluding the original)
    base_node_dim: int | None    # payload feature widths of the ingested graph
    base_edge_dim: int | None
    has_indicators: bool = False

    def layer_of(self, v: int) -> int:
        return int(self.graph.node_layer[v])


def top_layer_nodes(h: HsgGraph) -> np.ndarray:
    """The pooling mask: exactly the nodes of the highest layer."""
    start, end = h.layer_ranges[-1]
    return np.arange(start, end, dtype=np.int64)


def build_hsg(g: Graph, schedule: CoarseningSchedule,
              epsilon: float = 0.1) -> HsgGraph:
    """Build G^H from repeated (partition, quotient) steps.

    Stops early (with a warning) if a step would not shrink the current
    layer. Deterministic given the schedule's seeds.
    """
    if g.num_nodes < 1:
        raise DomainError("cannot augment an empty graph")
    layers = [g]
    partitions = []
    cur = g
    for step in schedule.steps:
        n_cur = cur.num_nodes
        if step.method == "vn":
            q = 1
        elif step.method == "external":
            q = step.partition.q
        else:
            q = max(1, int(math.floor(step.ratio * n_cur)))
        if q >= n_cur:
            warnings.warn(
                f"schedule step would not shrink layer of {n_cur} nodes; "
                "remaining steps skipped", stacklevel=2)
            break
        if step.method == "vn":
            part = coarsen.single_cluster_partition(cur)
        elif step.method == "external":
            part = step.partition
            if part.cluster_of.shape[0] != n_cur:
                raise DomainError("external partition does not match layer size")
        elif step.method == "random":
            part = coarsen.partition_random(cur, step.ratio, step.seed)
        else:
            part = coarsen.partition_balanced_cut(cur, q, epsilon, step.seed)
        partitions.append(part)
        cur = coarsen.quotient(cur, part)
        layers.append(cur)

    counts = [lay.num_nodes for lay in layers]
    offsets = np.concatenate(([0], np.cumsum(counts)))
    total = int(offsets[-1])
    layer_ranges = tuple((int(offsets[i]), int(offsets[i + 1]))
                         for i in range(len(layers)))

    phi = np.full(total, -1, dtype=np.int64)
    for i, part in enumerate(partitions):
        lo, hi = layer_ranges[i]
        phi[lo:hi] = offsets[i + 1] + part.cluster_of

    edge_blocks = [g.edges]
    kind_blocks = [np.full(g.num_edges, ORIGINAL, dtype=np.int64)]
    for i in range(1, len(layers)):
        lo = layer_ranges[i][0]
        horiz = layers[i].edges + lo
        edge_blocks.append(horiz)
        kind_blocks.append(np.full(horiz.shape[0], HORIZONTAL, dtype=np.int64))
    non_top = np.flatnonzero(phi >= 0)
    vert = np.column_stack((non_top, phi[non_top]))
    edge_blocks.append(vert)
    kind_blocks.append(np.full(vert.shape[0], VERTICAL, dtype=np.int64))

    node_layer = np.repeat(np.arange(len(layers), dtype=np.int64), counts)

    nf = None
    if g.node_features is not None:
        nf = np.zeros((total, g.node_features.shape[1]))
        nf[:g.num_nodes] = g.node_features
    all_edges = np.concatenate(edge_blocks)
    all_kinds = np.concatenate(kind_blocks)
    ef = None
    if g.edge_features is not None:
        ef = np.zeros((all_edges.shape[0], g.edge_features.shape[1]))
        ef[:g.num_edges] = g.edge_features

    full = make_graph(total, all_edges, node_features=nf, edge_features=ef,
                      node_layer=node_layer, edge_kind=all_kinds)
    phi.setflags(write=False)
    return HsgGraph(
        graph=full, layer_ranges=layer_ranges, phi=phi,
        num_layers=len(layers) - 1,
        base_node_dim=None if g.node_features is None else g.node_features.shape[1],
        base_edge_dim=None if g.edge_features is None else g.edge_features.shape[1],
    )


def _column_mode(block: np.ndarray) -> np.ndarray:
    """Per-column mode of integer-coded values; ties go to the smaller value."""
    out = np.empty(block.shape[1])
    for j in range(block.shape[1]):
        vals, counts = np.unique(block[:, j], return_counts=True)
        out[j] = vals[np.argmax(counts)]
    return out


def _require_integer_coded(feats: np.ndarray):
    if not np.allclose(feats, np.round(feats)):
        raise DomainError("mode imputation requires integer-coded features")


def impute_features(h: HsgGraph, node_mode: str = "dummy",
                    edge_mode: str = "dummy") -> HsgGraph:
    """Fill super-node/-edge features bottom-up and append indicators.

    `mean`/`mode` aggregate over direct children; `dummy` is a zero vector.
    Vertical edges always get dummy payloads. Every node gains a one-hot
    layer indicator, every edge a one-hot kind indicator.
    """
    for mode in (node_mode, edge_mode):
        if mode not in ("mean", "mode", "dummy"):
            raise DomainError(f"unknown imputation mode {mode!r}")
    if node_mode != "dummy" and h.base_node_dim is None:
        raise DomainError("node imputation needs base node features")
    if edge_mode != "dummy" and h.base_edge_dim is None:
        raise DomainError("edge imputation needs base edge features")
    if h.has_indicators:
        raise DomainError("features already carry indicators")

    g = h.graph
    total = g.num_nodes
    Z = h.num_layers
    d_v = h.base_node_dim or 0
    d_e = h.base_edge_dim or 0

    node_payload = np.zeros((total, d_v))
    if d_v:
        n0 = h.layer_ranges[0][1]
        node_payload[:n0] = g.node_features[:n0, :d_v]
        if node_mode == "mode":
            _require_integer_coded(node_payload[:n0])
        if node_mode != "dummy":
            for i in range(1, Z + 1):
                lo_prev, hi_prev = h.layer_ranges[i - 1]
                lo, hi = h.layer_ranges[i]
                for s in range(lo, hi):
                    children = np.flatnonzero(h.phi[lo_prev:hi_prev] == s) + lo_prev
                    block = node_payload[children]
                    node_payload[s] = (block.mean(axis=0) if node_mode == "mean"
                                       else _column_mode(block))

    edge_payload = np.zeros((g.num_edges, d_e))
    if d_e:
        orig_mask = g.edge_kind == ORIGINAL
        edge_payload[orig_mask] = g.edge_features[orig_mask, :d_e]
        if edge_mode == "mode":
            _require_integer_coded(edge_payload[orig_mask])
        if edge_mode != "dummy":
            # Group the level-below horizontal edges by their parent pair.
            for i in range(1, Z + 1):
                lower_kind = ORIGINAL if i == 1 else HORIZONTAL
                lo_prev, hi_prev = h.layer_ranges[i - 1]
                lower = np.flatnonzero(
                    (g.edge_kind == lower_kind)
                    & (g.node_layer[g.edges[:, 0]] == i - 1))
                groups = {}
                for idx in lower:
                    u, v = g.edges[idx]
                    pu, pv = int(h.phi[u]), int(h.phi[v])
                    if pu == pv or pu < 0 or pv < 0:
                        continue
                    groups.setdefault((min(pu, pv), max(pu, pv)), []).append(idx)
                here = np.flatnonzero(
                    (g.edge_kind == HORIZONTAL)
                    & (g.node_layer[g.edges[:, 0]] == i))
                for idx in here:
                    key = (int(g.edges[idx, 0]), int(g.edges[idx, 1]))
                    block = edge_payload[np.asarray(groups[key])]
                    edge_payload[idx] = (block.mean(axis=0) if edge_mode == "mean"
                                         else _column_mode(block))

    layer_onehot = np.eye(Z + 1)[g.node_layer]
    kind_onehot = np.eye(3)[g.edge_kind]
    nf = np.concatenate((node_payload, layer_onehot), axis=1)
    ef = np.concatenate((edge_payload, kind_onehot), axis=1)

    new_graph = make_graph(total, g.edges, node_features=nf, edge_features=ef,
                           node_layer=g.node_layer, edge_kind=g.edge_kind)
    return replace(h, graph=new_graph, has_indicators=True)


def strip_to_original(h: HsgGraph) -> Graph:
    """Drop all support nodes/edges and indicator columns; the inverse of
    building (and optionally imputing) an HSG."""
    g = h.graph
    n0 = h.layer_ranges[0][1]
    orig_mask = g.edge_kind == ORIGINAL
    edges = g.edges[orig_mask]
    nf = ef = None
    if h.base_node_dim is not None:
        nf = g.node_features[:n0, :h.base_node_dim]
    if h.base_edge_dim is not None:
        ef = g.edge_features[orig_mask][:, :h.base_edge_dim]
    return make_graph(n0, edges, node_features=nf, edge_features=ef)


# --- serialization -----------------------------------------------------------

def hsg_to_obj(h: HsgGraph, meta: dict | None = None) -> dict:
    from .serialize import graph_to_obj
    hsg_meta = {
        "num_layers": h.num_layers,
        "base_node_dim": h.base_node_dim,
        "base_edge_dim": h.base_edge_dim,
        "indicators": h.has_indicators,
    }
    full_meta = dict(meta or {})
    full_meta["hsg"] = hsg_meta
    return graph_to_obj(h.graph, phi=h.phi, layers=h.layer_ranges,
                        meta=full_meta)


def obj_to_hsg(obj: dict) -> HsgGraph:
    from .serialize import obj_to_graph
    if "phi" not in obj or "layers" not in obj:
        raise DomainError("not an HSG graph file (missing phi/layers)")
    g = obj_to_graph(obj)
    hsg_meta = (obj.get("meta") or {}).get("hsg") or {}
    layer_ranges = tuple((int(a), int(b)) for a, b in obj["layers"])
    phi = np.asarray(obj["phi"], dtype=np.int64)
    phi.setflags(write=False)
    return HsgGraph(
        graph=g, layer_ranges=layer_ranges, phi=phi,
        num_layers=int(hsg_meta.get("num_layers", len(layer_ranges) - 1)),
        base_node_dim=hsg_meta.get("base_node_dim"),
        base_edge_dim=hsg_meta.get("base_edge_dim"),
        has_indicators=bool(hsg_meta.get("indicators", False)),
    )
