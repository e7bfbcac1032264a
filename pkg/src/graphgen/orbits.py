"""Node orbit counting for connected graphlets on 2-4 nodes (orbits 0-14).

The counter is edge-anchored: it enumerates triangles per edge and complete
4-cliques directly, accumulates overlapping path/star counts per node, and
recovers the induced-orbit counts by solving the standard linear system that
relates non-induced counts to induced ones. Orbit numbering:

    0  edge endpoint (= degree)          8  4-cycle node
    1  3-path end                        9  paw pendant
    2  3-path center                    10  paw triangle node (off tail)
    3  triangle node                    11  paw tail-attachment node
    4  4-path end                       12  diamond degree-2 node
    5  4-path middle                    13  diamond degree-3 node
    6  claw leaf                        14  4-clique node
    7  claw center
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

NUM_ORBITS = 15


def orbit_counts(g: Graph) -> np.ndarray:
    """Return an (n, 15) int64 table of per-node orbit counts."""
    n = g.n
    adj = [list(nbrs) for nbrs in g.adjacency]  # sorted ascending
    adj_sets = [set(nbrs) for nbrs in g.adjacency]
    deg = [len(a) for a in adj]
    edges = g.edges
    m = len(edges)
    orbit = np.zeros((n, NUM_ORBITS), dtype=np.int64)
    if n == 0:
        return orbit

    # Per-edge triangle counts.
    tri = [0] * m
    for i, (x, y) in enumerate(edges):
        small, large = (x, y) if deg[x] < deg[y] else (y, x)
        t = 0
        for z in adj[small]:
            if z in adj_sets[large]:
                t += 1
        tri[i] = t

    # 4-cliques per node, counted once via the descending chain x > y > z > zz.
    c4 = [0] * n
    for x in range(n):
        for y in adj[x]:
            if y >= x:
                break
            common = [z for z in adj[y] if z < y and z in adj_sets[x]]
            for i in range(len(common)):
                z = common[i]
                for j in range(i + 1, len(common)):
                    zz = common[j]
                    if zz in adj_sets[z]:
                        c4[x] += 1
                        c4[y] += 1
                        c4[z] += 1
                        c4[zz] += 1

    inc = [[] for _ in range(n)]  # (neighbor, edge id) per node
    for i, (x, y) in enumerate(edges):
        inc[x].append((y, i))
        inc[y].append((x, i))

    common = [0] * n  # 2-walk counts x..z, rebuilt per x
    common_touched: list[int] = []

    for x in range(n):
        for z in common_touched:
            common[z] = 0
        common_touched.clear()

        f_12_14 = f_10_13 = 0
        f_13_14 = f_11_13 = 0
        f_7_11 = f_5_8 = 0
        f_6_9 = f_9_12 = f_4_8 = f_8_12 = 0

        orbit[x, 0] = deg[x]
        adj_x = adj_sets[x]

        # x as the middle node of the anchored 2- and 3-walks.
        for y, ey in inc[x]:
            for z, ez in inc[y]:
                if z in adj_x:  # triangle x-y-z
                    if z < y:
                        f_12_14 += tri[ez] - 1
                        f_10_13 += (deg[y] - 1 - tri[ez]) + (deg[z] - 1 - tri[ez])
                else:
                    if common[z] == 0:
                        common_touched.append(z)
                    common[z] += 1
            for idx2 in range(len(inc[x])):
                z, ez = inc[x][idx2]
                if z <= y:
                    continue
                if z in adj_sets[y]:  # triangle x-y-z with x central pair
                    orbit[x, 3] += 1
                    f_13_14 += (tri[ey] - 1) + (tri[ez] - 1)
                    f_11_13 += (deg[x] - 1 - tri[ey]) + (deg[x] - 1 - tri[ez])
                else:  # induced path y-x-z
                    orbit[x, 2] += 1
                    f_7_11 += (deg[x] - 1 - tri[ey] - 1) + (deg[x] - 1 - tri[ez] - 1)
                    f_5_8 += (deg[y] - 1 - tri[ey]) + (deg[z] - 1 - tri[ez])

        # x as a side node of induced 2-paths x-y-z.
        for y, ey in inc[x]:
            for z, ez in inc[y]:
                if z == x:
                    continue
                if z not in adj_x:
                    orbit[x, 1] += 1
                    f_6_9 += deg[y] - 1 - tri[ey] - 1
                    f_9_12 += tri[ez]
                    f_4_8 += deg[z] - 1 - tri[ez]
                    f_8_12 += common[z] - 1

        o14 = c4[x]
        orbit[x, 14] = o14
        orbit[x, 13] = (f_13_14 - 6 * o14) // 2
        orbit[x, 12] = f_12_14 - 3 * o14
        orbit[x, 11] = (f_11_13 - f_13_14 + 6 * o14) // 2
        orbit[x, 10] = f_10_13 - f_13_14 + 6 * o14
        orbit[x, 9] = (f_9_12 - 2 * f_12_14 + 6 * o14) // 2
        orbit[x, 8] = (f_8_12 - 2 * f_12_14 + 6 * o14) // 2
        orbit[x, 7] = (f_13_14 + f_7_11 - f_11_13 - 6 * o14) // 6
        orbit[x, 6] = (2 * f_12_14 + f_6_9 - f_9_12 - 6 * o14) // 2
        orbit[x, 5] = 2 * f_12_14 + f_5_8 - f_8_12 - 6 * o14
        orbit[x, 4] = 2 * f_12_14 + f_4_8 - f_8_12 - 6 * o14

    return orbit
