"""Simple undirected graph plus the structural statistics every module consumes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidNodeError


class Graph:
    """Simple undirected graph on dense integer nodes 0..n-1.

    Edges are stored canonically as sorted (u, v) tuples with u < v, and
    adjacency as per-node sorted neighbor lists. Instances are immutable
    after construction; all statistics below are pure functions of them.
    """

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n: int, edges) -> None:
        if n < 0:
            raise ValueError(f"node count must be nonnegative, got {n}")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in canon:
                raise ValueError(f"duplicate edge {key}")
            canon.add(key)
        self.n = n
        self.edges = tuple(sorted(canon))
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


@dataclass
class GraphStats:
    """Aggregate structural profile of a graph.

    degree_histogram maps degree -> node count; orbit_counts is the
    (n, 15) table over connected graphlets on 2-4 nodes.
    """

    degree_histogram: dict[int, int]
    clustering_per_node: list[float]
    orbit_counts: np.ndarray
    avg_degree: float
    sparsity: float


def _check_node(g: Graph, u: int) -> None:
    if not (0 <= u < g.n):
        raise InvalidNodeError(f"node {u} outside 0..{g.n - 1}")


def degree(g: Graph, u: int) -> int:
    """Number of neighbors of node u."""
    _check_node(g, u)
    return len(g.adjacency[u])


def clustering_coefficient(g: Graph, u: int) -> float:
    """Local clustering 2*tri(u) / (d_u * (d_u - 1)); zero when d_u < 2."""
    _check_node(g, u)
    nbrs = g.adjacency[u]
    d = len(nbrs)
    if d < 2:
        return 0.0
    nbr_set = set(nbrs)
    links = 0
    for v in nbrs:
        for w in g.adjacency[v]:
            if w > v and w in nbr_set:
                links += 1
    return 2.0 * links / (d * (d - 1))


def triangles_at(g: Graph, u: int) -> int:
    """Number of triangles through node u (adjacency-set intersection)."""
    _check_node(g, u)
    nbr_set = set(g.adjacency[u])
    count = 0
    for v in g.adjacency[u]:
        for w in g.adjacency[v]:
            if w > v and w in nbr_set:
                count += 1
    return count


def is_connected(g: Graph) -> bool:
    """True iff a BFS from node 0 reaches every node."""
    if g.n == 0:
        raise InvalidNodeError("connectivity undefined for the empty graph")
    if g.n == 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                reached += 1
                queue.append(v)
    return reached == g.n


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest member."""
    seen = bytearray(g.n)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = 1
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def orbit_counts(g: Graph) -> np.ndarray:
    """Per-node counts over the 15 orbits of connected graphlets on <= 4 nodes."""
    from . import orbits

    return orbits.orbit_counts(g)


def graph_stats(g: Graph) -> GraphStats:
    """Degree histogram, clustering, orbit table, average degree and sparsity."""
    degs = g.degrees()
    hist: dict[int, int] = {}
    for d in degs:
        hist[int(d)] = hist.get(int(d), 0) + 1
    clustering = [clustering_coefficient(g, u) for u in range(g.n)]
    avg = 2.0 * g.m / g.n if g.n else 0.0
    max_edges = g.n * (g.n - 1) / 2
    sparsity = g.m / max_edges if max_edges else 0.0
    return GraphStats(
        degree_histogram=hist,
        clustering_per_node=clustering,
        orbit_counts=orbit_counts(g),
        avg_degree=avg,
        sparsity=sparsity,
    )
