"""Immutable undirected simple graph in CSR form, plus text I/O.

Every topology in the package reduces to this one structure: ``indptr``
and ``indices`` arrays with neighbor lists sorted ascending. Arrays are
frozen after construction, so a Graph can be shared freely across
threads.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on nodes ``0..node_count-1``.

    ``indptr[v]:indptr[v+1]`` slices ``indices`` into the sorted neighbor
    list of ``v``. Invariants (no self-loops, no parallel edges, symmetric
    adjacency, indices in range) are enforced by the constructors.
    """

    indptr: np.ndarray
    indices: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.node_count, dtype=self.indices.dtype),
                        self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def from_edges(node_count: int, edges) -> Graph:
    """Build a Graph from an iterable of (u, v) pairs, validating invariants.

    Pairs may come in either orientation; duplicates (in any orientation)
    and self-loops are rejected.
    """
    if node_count < 0:
        raise ParameterError("node_count must be non-negative")
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                   dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ParameterError("edges must be pairs")
    if e.size and (e.min() < 0 or e.max() >= node_count):
        raise ParameterError("edge endpoint out of range")
    u = np.minimum(e[:, 0], e[:, 1])
    v = np.maximum(e[:, 0], e[:, 1])
    if np.any(u == v):
        raise ParameterError("self-loops are not allowed")
    key = u * node_count + v
    if len(np.unique(key)) != len(key):
        raise ParameterError("duplicate edges are not allowed")

    both_src = np.concatenate([u, v])
    both_dst = np.concatenate([v, u])
    order = np.lexsort((both_dst, both_src))
    indices = both_dst[order].astype(np.int32)
    counts = np.bincount(both_src, minlength=node_count)
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(_freeze(indptr), _freeze(indices))


@dataclass(frozen=True)
class GeometricLayout:
    """Point positions in the unit square plus the connection radius."""

    points: np.ndarray  # (n, 2) float64 in [0, 1]^2
    radius: float

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ParameterError("points must be an (n, 2) array")
        if pts.size and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ParameterError("coordinates must lie in [0, 1]")
        if not self.radius > 0.0:
            raise ParameterError("radius must be positive")
        object.__setattr__(self, "points", _freeze(pts))

    @property
    def node_count(self) -> int:
        return len(self.points)


# -- edge-list text format --------------------------------------------------
#
# line 1: "n m"; then m lines "u v" with u < v, 0-based ASCII decimal.


def write_edge_list(g: Graph, f) -> None:
    close = False
    if isinstance(f, (str, bytes)):
        f, close = open(f, "w"), True
    try:
        f.write(f"{g.node_count} {g.edge_count}\n")
        for u, v in g.edge_array():
            f.write(f"{u} {v}\n")
    finally:
        if close:
            f.close()


def read_edge_list(f) -> Graph:
    close = False
    if isinstance(f, (str, bytes)):
        f, close = open(f, "r"), True
    try:
        header = f.readline().split()
        if len(header) != 2:
            raise ParameterError("edge list header must be 'n m'")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError as err:
            raise ParameterError(f"bad edge list header: {err}") from err
        edges = []
        for lineno, line in enumerate(f, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ParameterError(f"line {lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as err:
                raise ParameterError(f"line {lineno}: {err}") from err
            if not u < v:
                raise ParameterError(f"line {lineno}: requires u < v")
            edges.append((u, v))
        if len(edges) != m:
            raise ParameterError(f"header claims {m} edges, file has {len(edges)}")
        return from_edges(n, edges)
    finally:
        if close:
            f.close()


def write_layout(layout: GeometricLayout, f) -> None:
    close = False
    if isinstance(f, (str, bytes)):
        f, close = open(f, "w"), True
    try:
        f.write(f"{layout.node_count} {float(layout.radius)!r}\n")
        for x, y in layout.points:
            f.write(f"{float(x)!r} {float(y)!r}\n")
    finally:
        if close:
            f.close()


def read_layout(f) -> GeometricLayout:
    close = False
    if isinstance(f, (str, bytes)):
        f, close = open(f, "r"), True
    try:
        header = f.readline().split()
        if len(header) != 2:
            raise ParameterError("layout header must be 'n r'")
        try:
            n, r = int(header[0]), float(header[1])
        except ValueError as err:
            raise ParameterError(f"bad layout header: {err}") from err
        pts = np.loadtxt(f, dtype=np.float64, ndmin=2)
        if pts.size == 0:
            pts = pts.reshape(0, 2)
        if len(pts) != n:
            raise ParameterError(f"header claims {n} points, file has {len(pts)}")
        return GeometricLayout(pts, r)
    finally:
        if close:
            f.close()


def edge_list_str(g: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()
