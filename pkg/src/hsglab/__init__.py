"""hsglab: hierarchical support graph construction and topological analysis."""

__version__ = "0.1.0"

from .errors import DomainError, WalkCapExceeded
from .graph import (Graph, DegreeSummary, make_graph, graphs_equal, neighbors,
                    degree_summary, connected_components, induced_subgraph,
                    is_connected, ORIGINAL, HORIZONTAL, VERTICAL)
from .coarsen import (Partition, ReductionTrace, partition_random,
                      partition_balanced_cut, quotient, reduction_trace)
from .hsg import (CoarseningSchedule, ScheduleStep, HsgGraph, parse_schedule,
                  uniform_schedule, build_hsg, impute_features,
                  top_layer_nodes, strip_to_original)
from .metrics import (ResistanceSolver, MetricsReport, effective_resistance,
                      expected_commute_time, simulate_commute_time,
                      stats_report)
from .connectivity import (node_connectivity_pair, graph_node_connectivity,
                           average_node_connectivity)
from .generators import (ErdosRenyiSpec, gen_erdos_renyi, path_graph,
                         cycle_graph, grid_graph, star_graph, random_tree,
                         connected_er)
from .theorems import (verify_size_bounds, cross_edge_probability,
                       degree_regime, check_degree_conditions, RegimeResult,
                       CrossEdgeResult)
from .propagation import (PropagationState, mp_round, bfs_distances,
                          receptive_field, rounds_to_full_coverage,
                          coverage_comparison)
