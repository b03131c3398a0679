"""Command-line interface.

Subcommands: generate, augment, strip, stats, verify, propagate, partition.
Exit codes: 0 success, 1 verification failure, 2 usage/parse error.
Every output file carries a `meta` block with the tool version, the resolved
configuration and the seed, and is byte-identical across repeated runs.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from . import coarsen, generators, hsg, metrics, propagation, theorems
from .errors import DomainError
from .serialize import (canonical_dumps, graph_to_obj, load_graph, load_json,
                        obj_to_graph, save_json)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


def _meta(args, **extra) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k not in ("func", "out") and v is not None and not callable(v)}
    return {"tool": "hsglab", "version": __version__,
            "config": cfg, "seed": getattr(args, "seed", 0), **extra}


def _write_or_print(path, obj):
    text = canonical_dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --- generate ----------------------------------------------------------------

def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "er":
        if args.n is None or (args.p is None and args.beta is None):
            raise DomainError("er needs --n and one of --p/--beta")
        g = generators.gen_erdos_renyi(generators.ErdosRenyiSpec(
            n=args.n, p=args.p, beta=args.beta, seed=args.seed))
    elif kind == "path":
        g = generators.path_graph(_require(args, "n"))
    elif kind == "cycle":
        g = generators.cycle_graph(_require(args, "n"))
    elif kind == "grid":
        g = generators.grid_graph(_require(args, "rows"), _require(args, "cols"))
    elif kind == "tree":
        g = generators.random_tree(_require(args, "n"), seed=args.seed)
    else:  # pragma: no cover
        raise DomainError(f"unknown kind {kind}")
    _write_or_print(args.out, graph_to_obj(g, meta=_meta(args)))
    return EXIT_OK


def _require(args, name):
    val = getattr(args, name)
    if val is None:
        raise DomainError(f"--{name} is required for {args.kind}")
    return val


# --- augment / strip ----------------------------------------------------------

def cmd_augment(args) -> int:
    g = load_graph(args.input)
    schedule = hsg.parse_schedule(args.schedule, base_seed=args.seed)
    h = hsg.build_hsg(g, schedule)
    h = hsg.impute_features(h, node_mode=args.node_mode, edge_mode=args.edge_mode)
    ratios = {s.ratio for s in schedule.steps if s.ratio is not None}
    bound = (f"{g.num_nodes / (1 - ratios.pop()):.6g}"
             if len(ratios) == 1 and not any(s.method == "vn" for s in schedule.steps)
             else "-")
    print(f"layers={h.num_layers} nodes={h.graph.num_nodes} "
          f"edges={h.graph.num_edges} bound={bound}")
    _write_or_print(args.out, hsg.hsg_to_obj(h, meta=_meta(args)))
    return EXIT_OK


def cmd_strip(args) -> int:
    obj = load_json(args.input)
    h = hsg.obj_to_hsg(obj)
    g = hsg.strip_to_original(h)
    _write_or_print(args.out, graph_to_obj(g, meta=_meta(args)))
    return EXIT_OK


# --- stats ---------------------------------------------------------------------

def _augmentation_label(config: str) -> tuple[str, str]:
    if config == "none":
        return "original", "-"
    if config == "vn":
        return "virtual node", "vn"
    return "hsg", config


def cmd_stats(args) -> int:
    rows = []
    skipped = 0
    for config in args.config:
        reports = []
        for idx, path in enumerate(args.inputs):
            g = load_graph(path)
            try:
                if config == "none":
                    target = g
                else:
                    schedule = hsg.parse_schedule(config,
                                                  base_seed=args.seed + idx)
                    target = hsg.build_hsg(g, schedule)
                reports.append(metrics.stats_report(target, workers=args.workers))
            except DomainError as exc:
                print(f"warning: skipping {path} ({exc})", file=sys.stderr)
                skipped += 1
        if not reports:
            continue
        aug, coars = _augmentation_label(config)
        mean = lambda attr: float(np.mean([getattr(rep, attr) for rep in reports]))
        rows.append((aug, coars, mean("avg_nodes"), mean("avg_edges"),
                     mean("diameter"), mean("avg_shortest_path"),
                     mean("mean_effective_resistance"),
                     mean("mean_commute_time"), mean("gnc"), mean("anc")))
    lines = [metrics.MetricsReport.CSV_HEADER]
    for row in rows:
        lines.append(",".join([row[0], row[1]]
                              + [format(x, ".6f") for x in row[2:]]))
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if not rows and skipped:
        return EXIT_VERIFY_FAIL
    return EXIT_OK


# --- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    theorem = args.theorem
    if theorem == "4.1":
        n_values = args.n or [100]
        report = theorems.verify_size_bounds(n_values, args.r, args.trials,
                                             seed=args.seed, p=args.p)
        ok = report["pass"]
        details = {"checked": report["checked"],
                   "counterexamples": report["counterexamples"]}
        params = {"n": n_values, "r": args.r, "trials": args.trials}
    elif theorem == "4.2":
        n = (args.n or [200])[0]
        g = generators.connected_er(n, seed=args.seed)
        h = hsg.build_hsg(g, hsg.uniform_schedule(n, args.r, "random",
                                                  base_seed=args.seed))
        layers = [g] + [_layer_graph(h, i) for i in range(1, h.num_layers + 1)]
        trace = coarsen.reduction_trace(layers)
        report = theorems.check_degree_conditions(trace, g, band=args.band)
        ok = report["pass"]
        details = report
        params = {"n": n, "r": args.r, "band": args.band}
    elif theorem == "4.3":
        n_values = args.n or [512, 1024, 2048, 4096]
        beta = args.beta if args.beta is not None else 0.5
        result = theorems.degree_regime(beta, n_values, args.trials,
                                        seed=args.seed)
        expected = _expected_regime(beta)
        ok = result.verdict == expected
        details = {"ratios": list(result.ratios), "slope": result.slope,
                   "verdict": result.verdict, "expected": expected}
        params = {"beta": beta, "n": list(n_values), "trials": args.trials}
    elif theorem == "B.1":
        n = (args.n or [1000])[0]
        p = args.p if args.p is not None else 0.05
        result = theorems.cross_edge_probability(n, p, args.r, args.trials,
                                                 seed=args.seed)
        tol = 4.0 * math.sqrt(
            max(result.predicted * (1 - result.predicted), 1e-12) / result.samples)
        ok = abs(result.measured - result.predicted) <= tol
        details = {"predicted": result.predicted, "measured": result.measured,
                   "samples": result.samples, "tolerance": tol}
        params = {"n": n, "p": p, "r": args.r, "trials": args.trials}
    else:  # pragma: no cover
        raise DomainError(f"unknown theorem {theorem}")
    out = {"theorem": theorem, "parameters": params, "pass": bool(ok),
           "details": details, "meta": _meta(args)}
    _write_or_print(args.out, out)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def _expected_regime(beta: float) -> str:
    if abs(beta - 0.5) < 1e-12 or beta >= 1.0:
        return "constant"
    if beta < 0.5:
        return "vanishing"
    return "diverging"


def _layer_graph(h, i):
    from .graph import make_graph, HORIZONTAL
    lo, hi = h.layer_ranges[i]
    mask = ((h.graph.edge_kind == HORIZONTAL)
            & (h.graph.node_layer[h.graph.edges[:, 0]] == i))
    return make_graph(hi - lo, h.graph.edges[mask] - lo)


# --- propagate -------------------------------------------------------------------

def cmd_propagate(args) -> int:
    g = load_graph(args.input)
    state = propagation.PropagationState(
        h=np.eye(1, g.num_nodes, args.source).T)
    informed_ever = np.zeros(g.num_nodes, dtype=bool)
    informed_ever[args.source] = True
    lines = ["round,informed,informed_fraction"]
    lines.append(f"0,{int(informed_ever.sum())},"
                 f"{informed_ever.mean():.6f}")
    for t in range(1, args.rounds + 1):
        state = propagation.mp_round(g, state, agg=args.agg, update=args.update)
        informed_ever |= np.abs(state.h[:, 0]) > 0
        lines.append(f"{t},{int(informed_ever.sum())},"
                     f"{informed_ever.mean():.6f}")
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# --- partition -------------------------------------------------------------------

def cmd_partition(args) -> int:
    g = load_graph(args.input)
    if args.method == "random":
        if args.ratio is None:
            raise DomainError("random partition needs --ratio")
        part = coarsen.partition_random(g, args.ratio, args.seed)
    else:
        if args.q is None:
            raise DomainError("balanced partition needs --q")
        part = coarsen.partition_balanced_cut(g, args.q, args.epsilon, args.seed)
    obj = {"cluster_of": [int(c) for c in part.cluster_of], "q": part.q,
           "edge_cut": part.edge_cut, "max_imbalance": part.max_imbalance,
           "meta": _meta(args)}
    _write_or_print(args.out, obj)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsglab",
        description="Hierarchical support graph construction and analysis")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic graph")
    p.add_argument("kind", choices=["er", "path", "cycle", "grid", "tree"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("augment", help="build and impute an HSG")
    p.add_argument("input")
    p.add_argument("--schedule", required=True,
                   help="e.g. m:0.25,vn (m=balanced cut, r=random, vn=apex)")
    p.add_argument("--node-mode", default="dummy",
                   choices=["mean", "mode", "dummy"])
    p.add_argument("--edge-mode", default="dummy",
                   choices=["mean", "mode", "dummy"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("strip", help="recover the original graph from an HSG")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("stats", help="Table-style statistics CSV")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--config", action="append", required=True,
                   help="'none', 'vn', or a schedule string; repeatable")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="empirical theorem checks")
    p.add_argument("--theorem", required=True,
                   choices=["4.1", "4.2", "4.3", "B.1"])
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--beta", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--band", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("propagate", help="receptive-field CSV per round")
    p.add_argument("input")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--agg", default="sum", choices=list(propagation.AGGREGATORS))
    p.add_argument("--update", default="add", choices=list(propagation.UPDATES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("partition", help="run a partitioner directly")
    p.add_argument("input")
    p.add_argument("--method", required=True, choices=["random", "balanced"])
    p.add_argument("--ratio", type=float)
    p.add_argument("--q", type=int)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
