"""Approximate and exact shortest-path distances through distance products."""

from .core import (
    INF,
    DistMatrix,
    GraphError,
    NoPathError,
    PathResult,
    WeightedGraph,
    adjacency_matrix,
    all_pairs_dijkstra,
    bounded_bellman_ford,
    dijkstra,
    parse_graph,
    read_graph,
    write_graph,
)
from .hopset import Hopset, HopsetEdge, HopsetReport, build_hopset, verify_hopset
from .knn import KnnResult, approx_knn, exact_knn, knn_report_path, trunc_k
from .minplus import (
    ScaleParams,
    approx_minplus,
    approx_minplus_with_witness,
    decode,
    encode,
    exact_minplus_via_mm,
    minplus_naive,
    sparse_minplus,
)
from .msp import AspResult, asp, report_path

__all__ = [
    "INF",
    "AspResult",
    "DistMatrix",
    "GraphError",
    "Hopset",
    "HopsetEdge",
    "HopsetReport",
    "KnnResult",
    "NoPathError",
    "PathResult",
    "ScaleParams",
    "WeightedGraph",
    "adjacency_matrix",
    "all_pairs_dijkstra",
    "approx_knn",
    "approx_minplus",
    "approx_minplus_with_witness",
    "asp",
    "bounded_bellman_ford",
    "build_hopset",
    "decode",
    "dijkstra",
    "encode",
    "exact_knn",
    "exact_minplus_via_mm",
    "knn_report_path",
    "minplus_naive",
    "parse_graph",
    "read_graph",
    "report_path",
    "sparse_minplus",
    "trunc_k",
    "verify_hopset",
    "write_graph",
]
