"""Graph generation toolkit: hierarchical scale-free generator driven only by
(N, M, d_max), classical random-graph baselines, synthetic reference corpora,
and MMD-based corpus evaluation."""

from .graph import Graph, GraphStats, clustering_coefficient, degree, graph_stats, is_connected, orbit_counts

__all__ = [
    "Graph",
    "GraphStats",
    "degree",
    "clustering_coefficient",
    "orbit_counts",
    "is_connected",
    "graph_stats",
]
