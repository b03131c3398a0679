"""Canonical JSON graph format and the edge-list text format.

Canonical form: keys sorted, edges sorted lexicographically, floats printed
with 17 significant digits. Repeated runs with the same inputs produce
byte-identical files.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import DomainError
from .graph import Graph, KIND_CODES, KIND_NAMES, make_graph


def canonical_dumps(obj) -> str:
    """JSON with sorted keys and '%.17g' floats."""
    parts = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts):
    if obj is None:
        parts.append("null")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            raise DomainError("non-finite float in canonical serialization")
        if x == int(x) and abs(x) < 1e16:
            parts.append(f"{int(x)}.0")
        else:
            parts.append(format(x, ".17g"))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(key)))
            parts.append(":")
            _emit(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _emit(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def graph_to_obj(g: Graph, phi=None, layers=None, meta=None) -> dict:
    obj = {
        "num_nodes": g.num_nodes,
        "edges": [[int(u), int(v)] for u, v in g.edges],
        "node_layer": [int(x) for x in g.node_layer],
        "edge_kind": [KIND_NAMES[k] for k in g.edge_kind],
    }
    if g.node_features is not None:
        obj["node_features"] = [[float(x) for x in row] for row in g.node_features]
    if g.edge_features is not None:
        obj["edge_features"] = [[float(x) for x in row] for row in g.edge_features]
    if phi is not None:
        obj["phi"] = [int(x) for x in phi]
    if layers is not None:
        obj["layers"] = [[int(a), int(b)] for a, b in layers]
    if meta is not None:
        obj["meta"] = meta
    return obj


def obj_to_graph(obj: dict) -> Graph:
    try:
        n = obj["num_nodes"]
        edges = obj["edges"]
    except KeyError as exc:
        raise DomainError(f"graph JSON missing key {exc}") from exc
    edge_kind = None
    if "edge_kind" in obj:
        edge_kind = [KIND_CODES[k] for k in obj["edge_kind"]]
    return make_graph(
        n, np.asarray(edges, dtype=np.int64).reshape(-1, 2),
        node_features=obj.get("node_features"),
        edge_features=obj.get("edge_features"),
        node_layer=obj.get("node_layer"),
        edge_kind=edge_kind,
    )


def graph_canonical_bytes(g: Graph) -> bytes:
    """Canonical serialization of graph content only (no meta block)."""
    return canonical_dumps(graph_to_obj(g)).encode()


def save_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(obj))
        fh.write("\n")


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_graph(path) -> Graph:
    """Load either the canonical JSON format or the edge-list text format."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return obj_to_graph(json.loads(text))
    return parse_edge_list(text)


def parse_edge_list(text: str) -> Graph:
    """One `u v` pair per line; `#` comments; optional `n <count>` header."""
    num_nodes = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n":
            if len(fields) != 2 or num_nodes is not None:
                raise DomainError(f"line {lineno}: malformed header")
            num_nodes = int(fields[1])
            continue
        if len(fields) != 2:
            raise DomainError(f"line {lineno}: expected `u v`")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise DomainError(f"line {lineno}: non-integer endpoint") from exc
        edges.append((u, v))
    if num_nodes is None:
        num_nodes = 1 + max((max(u, v) for u, v in edges), default=-1)
    return make_graph(num_nodes, edges)
