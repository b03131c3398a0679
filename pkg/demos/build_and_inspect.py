"""Build a hierarchical support graph step by step and look inside it.

Starts from a sparse random graph, attaches two coarsened support layers
plus an apex node, and walks through what the augmentation actually adds:
layer sizes, edge kinds, the parent map, and the exact round trip back to
the original graph.
"""
import numpy as np

from hsglab import (build_hsg, connected_er, degree_summary, graphs_equal,
                    impute_features, make_graph, parse_schedule,
                    strip_to_original)

rng = np.random.default_rng(7)

# A connected sparse graph with a few node features to carry along.
base = connected_er(120, seed=7)
g = make_graph(base.num_nodes, base.edges,
               node_features=rng.normal(size=(base.num_nodes, 4)))
print(f"input: {g.num_nodes} nodes, {g.num_edges} edges")

# Two balanced-cut coarsening steps at ratio 0.3, then contract everything
# that is left into a single apex node.
schedule = parse_schedule("m:0.3,m:0.3,vn", base_seed=1)
h = build_hsg(g, schedule)

print(f"\naugmented: {h.graph.num_nodes} nodes, {h.graph.num_edges} edges, "
      f"{h.num_layers} support layers")
for i, (lo, hi) in enumerate(h.layer_ranges):
    print(f"  layer {i}: nodes {lo}..{hi - 1} ({hi - lo} nodes)")

kinds = np.bincount(h.graph.edge_kind, minlength=3)
print(f"edge kinds: {kinds[0]} original, {kinds[1]} horizontal, "
      f"{kinds[2]} vertical")

# Every non-top node has exactly one parent, one layer up.
parents = h.phi[: h.layer_ranges[-2][1]]
print(f"parent map covers {parents.size} nodes; "
      f"apex children: {int(np.sum(parents == h.graph.num_nodes - 1))}")

summary = degree_summary(h.graph)
print(f"mean degree after augmentation: {summary.mean_degree:.2f}")

# Fill in super-node payloads (child means) and indicator one-hots, then
# strip everything back off. The round trip is exact.
h = impute_features(h, node_mode="mean", edge_mode="dummy")
recovered = strip_to_original(h)
print(f"\nstrip(augment(g)) == g: {graphs_equal(recovered, g)}")
