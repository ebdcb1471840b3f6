"""Distance and structure metrics: BFS, eccentricity, diameter, components.

Single-source BFS is plain Python (never a bottleneck). The all-sources
sweep behind :func:`diameter` is the expensive part on big graphs, so it
dispatches on the active backend: a numba kernel, or chunked unweighted
Dijkstra from scipy's csgraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ..backend import active_backend
from ..errors import ConnectivityError, ParameterError
from .core import Graph, from_edges

#: Sentinel distance for unreachable nodes.
UNREACHABLE = -1


def _check_node(g: Graph, v: int) -> None:
    if not 0 <= v < g.node_count:
        raise ParameterError(f"node {v} out of range for n={g.node_count}")


def bfs_distances(g: Graph, src: int) -> np.ndarray:
    """Hop distance from src to every node (UNREACHABLE where cut off)."""
    _check_node(g, src)
    dist = np.full(g.node_count, UNREACHABLE, dtype=np.int64)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return dist


@dataclass(frozen=True)
class BfsTree:
    """Shortest-path spanning tree from ``root``.

    ``parent[root]`` is -1; ``depth[v]`` equals the BFS distance from the
    root in the source graph. Parents are the lowest-index discoverer, so
    the tree is deterministic.
    """

    root: int
    parent: np.ndarray
    depth: np.ndarray

    @property
    def leaf_count(self) -> int:
        n = len(self.parent)
        if n == 1:
            return 0
        has_child = np.zeros(n, dtype=bool)
        has_child[self.parent[self.parent >= 0]] = True
        return int(n - has_child.sum())


def bfs_tree(g: Graph, src: int) -> BfsTree:
    _check_node(g, src)
    n = g.node_count
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, UNREACHABLE, dtype=np.int64)
    depth[src] = 0
    queue = deque([src])
    seen = 1
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                parent[v] = u
                queue.append(v)
                seen += 1
    if seen != n:
        raise ConnectivityError("bfs_tree requires a connected graph")
    return BfsTree(src, parent, depth)


def eccentricity(g: Graph, v: int) -> int:
    dist = bfs_distances(g, v)
    if np.any(dist < 0):
        raise ConnectivityError("eccentricity requires a connected graph")
    return int(dist.max()) if g.node_count else 0


def eccentricities(g: Graph) -> np.ndarray:
    """Eccentricity of every node (the all-sources BFS hot loop)."""
    n = g.node_count
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if active_backend() == "numba":
        from ._bfs_numba import all_eccentricities
        ecc = all_eccentricities(g.indptr, g.indices, n)
        if np.any(ecc < 0):
            raise ConnectivityError("diameter requires a connected graph")
        return ecc
    return _eccentricities_scipy(g)


def _eccentricities_scipy(g: Graph) -> np.ndarray:
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    n = g.node_count
    adj = csr_matrix(
        (np.ones(len(g.indices), dtype=np.float64), g.indices, g.indptr),
        shape=(n, n),
    )
    ecc = np.empty(n, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(n, 1))
    for i0 in range(0, n, chunk):
        sources = np.arange(i0, min(n, i0 + chunk))
        dist = dijkstra(adj, unweighted=True, indices=sources)
        far = dist.max(axis=1)
        if np.any(np.isinf(far)):
            raise ConnectivityError("diameter requires a connected graph")
        ecc[i0:i0 + len(sources)] = far.astype(np.int64)
    return ecc


def diameter(g: Graph) -> int:
    if g.node_count == 0:
        return 0
    return int(eccentricities(g).max())


def is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    return int((bfs_distances(g, 0) >= 0).sum()) == g.node_count


def connected_components(g: Graph) -> list[np.ndarray]:
    """Node sets of each component, in order of smallest contained index."""
    n = g.node_count
    comp = np.full(n, -1, dtype=np.int64)
    comps = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        label = len(comps)
        comp[start] = label
        members = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if comp[v] < 0:
                    comp[v] = label
                    members.append(v)
                    queue.append(v)
        comps.append(np.sort(np.asarray(members, dtype=np.int64)))
    return comps


def giant_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest component plus the old-index map.

    Returns ``(sub, old_of_new)`` with ``old_of_new[new_index] ==
    old_index``. Size ties go to the component containing the smallest
    original index (components are discovered in that order, and max()
    keeps the first winner).
    """
    if g.node_count == 0:
        return g, np.zeros(0, dtype=np.int64)
    comps = connected_components(g)
    best = max(comps, key=len)
    new_of_old = np.full(g.node_count, -1, dtype=np.int64)
    new_of_old[best] = np.arange(len(best))
    edges = []
    for new_u, old_u in enumerate(best):
        for old_v in g.neighbors(old_u):
            if old_u < old_v and new_of_old[old_v] >= 0:
                edges.append((new_u, new_of_old[old_v]))
    return from_edges(len(best), edges), best
