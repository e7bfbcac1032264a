import numpy as np

from graphgen.graph import Graph
from graphgen.orbits import orbit_counts

from oracles import brute_force_orbit_counts, random_simple_graph


def test_path_p4_orbit0_is_degree():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert orbit_counts(g)[:, 0].tolist() == [1, 2, 2, 1]


def test_p4_path_orbits():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    counts = orbit_counts(g)
    assert counts[:, 4].tolist() == [1, 0, 0, 1]
    assert counts[:, 5].tolist() == [0, 1, 1, 0]


def test_triangle_matches_enumeration():
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    counts = orbit_counts(g)
    assert counts[:, 3].tolist() == [1, 1, 1]
    assert counts[:, 2].tolist() == [0, 0, 0]
    np.testing.assert_array_equal(counts, brute_force_orbit_counts(g))


def test_star_s4_claw_center():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    counts = orbit_counts(g)
    assert counts[0, 7] == 1
    assert counts[0, 6] == 0
    assert counts[1, 6] == 1
    np.testing.assert_array_equal(counts, brute_force_orbit_counts(g))


def test_named_small_graphs_match_oracle():
    cases = [
        Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),                    # C4
        Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)]),                    # paw
        Graph(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)]),            # diamond
        Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),    # K4
        Graph(5, []),                                                   # edgeless
    ]
    for g in cases:
        np.testing.assert_array_equal(orbit_counts(g), brute_force_orbit_counts(g))


def test_orbit0_equals_degree_random():
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = random_simple_graph(25, 0.25, rng)
        np.testing.assert_array_equal(orbit_counts(g)[:, 0], g.degrees())


def test_random_graphs_match_oracle():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(5, 22))
        p = float(rng.uniform(0.1, 0.6))
        g = random_simple_graph(n, p, rng)
        np.testing.assert_array_equal(orbit_counts(g), brute_force_orbit_counts(g))
