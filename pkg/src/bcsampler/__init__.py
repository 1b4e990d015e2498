"""Betweenness centrality by adaptive shortest-path sampling.

Estimates the (normalized) betweenness of every node in an unweighted
graph by sampling uniformly random shortest paths between uniformly
random node pairs with a balanced bidirectional BFS, stopping as soon as
per-node confidence intervals are tight enough. Includes a top-k ranking
mode, exact oracles, and random-graph scaling benchmarks.
"""

from .allocator import DeltaBudgets, compute_deltas
from .bounds import (
    ErrorParams,
    compute_omega,
    estimate_vertex_diameter,
    f_lower,
    g_upper,
)
from .engine import (
    APPROX,
    EXACT_RANK,
    NOT_IN_TOPK,
    Estimates,
    RunConfig,
    TopkReport,
    assign_topk_lambdas,
    run_absolute,
    run_topk,
)
from .exact import brandes, brute_force_bc, enumerate_shortest_paths
from .graph import EdgeListParseError, Graph, GraphError, load_edge_list
from .randgraph import (
    ScalingResult,
    WeightSequence,
    bench_scaling,
    constant_weights,
    gen_configuration_model,
    gen_irg,
    powerlaw_weights,
)
from .sampler import (
    PathSample,
    PathSampler,
    balanced_bidirectional_bfs,
    sample_pair,
    shortest_path_count,
)

__version__ = "0.1.0"

__all__ = [
    "APPROX",
    "DeltaBudgets",
    "EXACT_RANK",
    "EdgeListParseError",
    "ErrorParams",
    "Estimates",
    "Graph",
    "GraphError",
    "NOT_IN_TOPK",
    "PathSample",
    "PathSampler",
    "RunConfig",
    "ScalingResult",
    "TopkReport",
    "WeightSequence",
    "assign_topk_lambdas",
    "balanced_bidirectional_bfs",
    "bench_scaling",
    "brandes",
    "brute_force_bc",
    "compute_deltas",
    "compute_omega",
    "constant_weights",
    "enumerate_shortest_paths",
    "estimate_vertex_diameter",
    "f_lower",
    "gen_configuration_model",
    "gen_irg",
    "g_upper",
    "load_edge_list",
    "powerlaw_weights",
    "run_absolute",
    "run_topk",
    "sample_pair",
    "shortest_path_count",
]
