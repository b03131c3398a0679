"""Empirical checks of the structural guarantees, at desk scale.

Three quick experiments on random graphs: the size/depth/diameter bounds of
the hierarchy, the closed-form probability that two super-nodes end up
connected, and how the support layer's mean degree scales with graph size.
"""
from hsglab import (cross_edge_probability, degree_regime, verify_size_bounds)

# 1. Size bounds: total nodes <= n / (1 - r), depth <= ceil(log n / -log r),
#    diameter <= twice the depth. Checked over seeded random graphs.
report = verify_size_bounds([50, 100, 200], r=0.5, trials=20, seed=0)
print(f"size/depth/diameter bounds: {report['checked']} hierarchies checked, "
      f"{len(report['counterexamples'])} violations")

# 2. Cross-edge probability: under a random equal partition at ratio r, two
#    clusters are joined with probability 1 - (1-p)^(1/r^2).
for p in (0.01, 0.05, 0.2):
    res = cross_edge_probability(1000, p, r=0.1, trials=1, seed=1)
    print(f"p={p:<5} predicted {res.predicted:.4f}  "
          f"measured {res.measured:.4f}  ({res.samples} cluster pairs)")

# 3. Degree regimes at p = n^-beta with r = n / (m + n): the support layer's
#    mean degree shrinks, tracks, or outgrows the input's depending on beta.
for beta in (0.25, 0.5, 0.75):
    res = degree_regime(beta, [256, 512, 1024, 2048], trials=10, seed=2)
    print(f"beta={beta:<5} log-log slope {res.slope:+.3f}  -> {res.verdict}")
