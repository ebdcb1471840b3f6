"""BFS distances, trees, eccentricity/diameter, components."""

import math

import numpy as np
import pytest

from proptime.backend import use_backend
from proptime.errors import ConnectivityError
from proptime.graph import (
    UNREACHABLE,
    FamilySpec,
    bfs_distances,
    bfs_tree,
    connected_components,
    diameter,
    eccentricities,
    eccentricity,
    from_edges,
    generate,
    giant_component,
    is_connected,
)

FAMILIES = [
    FamilySpec("chain", n=9),
    FamilySpec("ring", n=10),
    FamilySpec("star", b=4, d=3),
    FamilySpec("complete", n=7),
    FamilySpec("complete_multipartite", parts=(3, 4)),
    FamilySpec("binary_tree", d=3),
    FamilySpec("lattice2d", side=4),
    FamilySpec("lattice2d_shortcuts", side=4, shortcuts=4, seed=2),
]


def test_bfs_distances_examples():
    assert list(bfs_distances(generate(FamilySpec("chain", n=5)), 0)) == [0, 1, 2, 3, 4]
    assert list(bfs_distances(generate(FamilySpec("complete", n=4)), 2)) == [1, 1, 0, 1]
    two = from_edges(2, [])
    assert list(bfs_distances(two, 0)) == [0, UNREACHABLE]


def test_eccentricity_examples():
    chain5 = generate(FamilySpec("chain", n=5))
    assert eccentricity(chain5, 0) == 4
    assert eccentricity(chain5, 2) == 2
    ring9 = generate(FamilySpec("ring", n=9))
    assert all(eccentricity(ring9, v) == 4 for v in range(9))
    with pytest.raises(ConnectivityError):
        eccentricity(from_edges(2, []), 0)


def test_diameter_examples():
    assert diameter(generate(FamilySpec("complete", n=6))) == 1
    for side in (2, 3, 5):
        assert diameter(generate(FamilySpec("lattice2d", side=side))) == 2 * (side - 1)
    assert diameter(generate(FamilySpec("binary_tree", d=3))) == 6
    with pytest.raises(ConnectivityError):
        diameter(from_edges(3, [(0, 1)]))


def test_diameter_trivial_sizes():
    assert diameter(from_edges(1, [])) == 0
    assert diameter(from_edges(0, [])) == 0


def test_bfs_tree_on_tree_is_identity():
    g = generate(FamilySpec("binary_tree", d=3))
    tree = bfs_tree(g, 0)
    assert tree.parent[0] == -1
    for v in range(1, g.node_count):
        assert tree.parent[v] == (v - 1) // 2  # heap parent


def test_bfs_tree_examples():
    t = bfs_tree(generate(FamilySpec("complete", n=4)), 0)
    assert list(t.depth) == [0, 1, 1, 1]
    t6 = bfs_tree(generate(FamilySpec("ring", n=6)), 0)
    assert t6.depth.max() == 3
    with pytest.raises(ConnectivityError):
        bfs_tree(from_edges(2, []), 0)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label())
def test_bfs_tree_matches_distances_and_edges(spec):
    g = generate(spec)
    for src in (0, g.node_count - 1):
        tree = bfs_tree(g, src)
        assert np.array_equal(tree.depth, bfs_distances(g, src))
        for v in range(g.node_count):
            par = tree.parent[v]
            if v == src:
                assert par == -1
            else:
                assert g.has_edge(int(par), v)
                assert tree.depth[v] == tree.depth[par] + 1


def test_leaf_count():
    assert bfs_tree(generate(FamilySpec("chain", n=5)), 0).leaf_count == 1
    assert bfs_tree(generate(FamilySpec("complete", n=4)), 0).leaf_count == 3
    assert bfs_tree(generate(FamilySpec("star", b=3, d=2)), 0).leaf_count == 3
    assert bfs_tree(from_edges(1, []), 0).leaf_count == 0


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label())
def test_eccentricity_diameter_sandwich(spec):
    g = generate(spec)
    diam = diameter(g)
    for v in range(g.node_count):
        ecc = eccentricity(g, v)
        assert math.ceil(diam / 2) <= ecc <= diam


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label())
def test_eccentricities_backends_agree(spec):
    g = generate(spec)
    with use_backend("numba"):
        a = eccentricities(g)
    with use_backend("numpy"):
        b = eccentricities(g)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("spec", [
    FamilySpec("erdos_renyi", n=30, edge_prob=0.15, seed=1),
    FamilySpec("power_law", n=40, exponent=2.5, k_min=2, seed=3),
    FamilySpec("geometric", n=40, r=0.35, seed=3),
], ids=lambda s: s.label())
def test_random_family_metrics_via_giant(spec):
    g, _ = giant_component(generate(spec))
    assert is_connected(g)
    diam = diameter(g)
    for v in range(g.node_count):
        ecc = eccentricity(g, v)
        assert math.ceil(diam / 2) <= ecc <= diam
    tree = bfs_tree(g, 0)
    assert np.array_equal(tree.depth, bfs_distances(g, 0))


def test_is_connected():
    assert is_connected(generate(FamilySpec("chain", n=5)))
    assert not is_connected(from_edges(3, [(0, 1)]))
    assert is_connected(from_edges(0, []))
    assert is_connected(from_edges(1, []))


def test_giant_component_tie_break():
    # two disjoint triangles: the one containing node 0 wins
    g = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    sub, old = giant_component(g)
    assert sub.node_count == 3
    assert list(old) == [0, 1, 2]


def test_giant_component_k4_plus_isolated():
    edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    g = from_edges(5, edges)
    sub, old = giant_component(g)
    assert sub == generate(FamilySpec("complete", n=4))
    assert list(old) == [0, 1, 2, 3]


def test_giant_component_remaps_edges():
    # component {1, 3, 4} as a path 1-3-4, plus isolated 0 and 2
    g = from_edges(5, [(1, 3), (3, 4)])
    sub, old = giant_component(g)
    assert list(old) == [1, 3, 4]
    assert sub.node_count == 3 and sub.edge_count == 2
    assert sub.has_edge(0, 1) and sub.has_edge(1, 2)


def test_connected_components_order():
    g = from_edges(5, [(2, 4), (1, 3)])
    comps = connected_components(g)
    assert [list(c) for c in comps] == [[0], [1, 3], [2, 4]]
