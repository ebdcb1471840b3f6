"""Topology generators for every analyzed graph family.

All generators are deterministic functions of (spec, seed). Random
families consume a ``numpy.random.default_rng(seed)`` stream in a fixed
documented order, so identical specs give identical edge sets.

Indexing conventions (fixed so traces are comparable across runs):

* chain/ring: nodes in path order, node 0 an end (chain) or arbitrary (ring)
* hub{n}: node 0 is the hub, clients are 1..n
* star{b, d}: node 0 is the hub; branch j occupies 1+j*d .. (j+1)*d,
  in hop order from the hub
* binary_tree{depth}: heap order, node i has children 2i+1 and 2i+2
* lattice2d{side}: node = row*side + col, 4-neighbor, no wraparound
* complete_multipartite{parts}: parts occupy consecutive index blocks
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from .core import GeometricLayout, Graph, from_edges

RANDOM_FAMILIES = frozenset(
    {"lattice2d_shortcuts", "erdos_renyi", "power_law", "geometric"}
)

FAMILIES = frozenset({
    "chain", "ring", "hub", "star", "complete", "complete_multipartite",
    "binary_tree", "lattice2d", "lattice2d_shortcuts", "erdos_renyi",
    "power_law", "geometric",
})


@dataclass(frozen=True)
class FamilySpec:
    """Parameterized description of one graph family instance.

    Only the fields relevant to ``family`` may be set; ``seed`` matters
    only for random families.
    """

    family: str
    n: int | None = None
    b: int | None = None
    d: int | None = None
    side: int | None = None
    parts: tuple[int, ...] | None = None
    edge_prob: float | None = None
    exponent: float | None = None
    k_min: int = 1
    r: float | None = None
    shortcuts: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        if self.parts is not None:
            object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))

    def label(self) -> str:
        """Short human-readable tag, e.g. ``star{b=3,d=2}``."""
        args = {
            "chain": f"n={self.n}", "ring": f"n={self.n}", "hub": f"n={self.n}",
            "star": f"b={self.b},d={self.d}", "complete": f"n={self.n}",
            "complete_multipartite": "parts=" + "+".join(map(str, self.parts or ())),
            "binary_tree": f"depth={self.d}",
            "lattice2d": f"side={self.side}",
            "lattice2d_shortcuts": f"side={self.side},shortcuts={self.shortcuts}",
            "erdos_renyi": f"n={self.n},p={self.edge_prob}",
            "power_law": f"n={self.n},lambda={self.exponent},kmin={self.k_min}",
            "geometric": f"n={self.n},r={self.r}",
        }[self.family]
        return f"{self.family}{{{args}}}"


def _need(spec: FamilySpec, **fields):
    out = []
    for name, cond in fields.items():
        value = getattr(spec, name)
        if value is None:
            raise ParameterError(f"{spec.family} requires --{name}")
        if not cond(value):
            raise ParameterError(f"{spec.family}: invalid {name}={value}")
        out.append(value)
    return out if len(out) > 1 else out[0]


def _path_edges(nodes) -> list[tuple[int, int]]:
    return [(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1)]


def generate(spec: FamilySpec) -> Graph:
    """Realize the named family as a Graph (layout dropped for geometric)."""
    if spec.family == "geometric":
        return generate_geometric(spec)[0]
    return _DISPATCH[spec.family](spec)


def _gen_chain(spec: FamilySpec) -> Graph:
    n = _need(spec, n=lambda v: v >= 0)
    return from_edges(n, _path_edges(list(range(n))))


def _gen_ring(spec: FamilySpec) -> Graph:
    n = _need(spec, n=lambda v: v >= 3)
    edges = _path_edges(list(range(n))) + [(n - 1, 0)]
    return from_edges(n, edges)


def _gen_hub(spec: FamilySpec) -> Graph:
    n = _need(spec, n=lambda v: v >= 0)
    return from_edges(n + 1, [(0, c) for c in range(1, n + 1)])


def _gen_star(spec: FamilySpec) -> Graph:
    b, d = _need(spec, b=lambda v: v >= 0, d=lambda v: v >= 0)
    edges = []
    for j in range(b):
        branch = [0] + list(range(1 + j * d, 1 + (j + 1) * d))
        edges.extend(_path_edges(branch))
    return from_edges(1 + b * d, edges)


def _gen_complete(spec: FamilySpec) -> Graph:
    n = _need(spec, n=lambda v: v >= 0)
    u, v = np.triu_indices(n, k=1)
    return from_edges(n, np.column_stack([u, v]))


def _gen_multipartite(spec: FamilySpec) -> Graph:
    parts = _need(spec, parts=lambda p: len(p) >= 1 and all(s >= 0 for s in p))
    bounds = np.concatenate([[0], np.cumsum(parts)])
    n = int(bounds[-1])
    edges = []
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            for u in range(bounds[a], bounds[a + 1]):
                for v in range(bounds[b], bounds[b + 1]):
                    edges.append((u, v))
    return from_edges(n, edges)


def _gen_binary_tree(spec: FamilySpec) -> Graph:
    depth = _need(spec, d=lambda v: v >= 0)
    n = 2 ** (depth + 1) - 1
    edges = []
    for i in range(n):
        for child in (2 * i + 1, 2 * i + 2):
            if child < n:
                edges.append((i, child))
    return from_edges(n, edges)


def _lattice_edges(side: int) -> list[tuple[int, int]]:
    edges = []
    for row in range(side):
        for col in range(side):
            v = row * side + col
            if col + 1 < side:
                edges.append((v, v + 1))
            if row + 1 < side:
                edges.append((v, v + side))
    return edges


def _gen_lattice(spec: FamilySpec) -> Graph:
    side = _need(spec, side=lambda v: v >= 0)
    return from_edges(side * side, _lattice_edges(side))


def _gen_lattice_shortcuts(spec: FamilySpec) -> Graph:
    side, k = _need(spec, side=lambda v: v >= 0, shortcuts=lambda v: v >= 0)
    n = side * side
    edges = set((u, v) for u, v in _lattice_edges(side))
    max_edges = n * (n - 1) // 2
    if len(edges) + k > max_edges:
        raise ParameterError("more shortcuts than free node pairs")
    rng = np.random.default_rng(spec.seed)
    added = 0
    while added < k:
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in edges:
            continue
        edges.add((u, v))
        added += 1
    return from_edges(n, sorted(edges))


def _gen_erdos_renyi(spec: FamilySpec) -> Graph:
    n, p = _need(spec, n=lambda v: v >= 0,
                 edge_prob=lambda v: 0.0 <= v <= 1.0)
    rng = np.random.default_rng(spec.seed)
    edges = []
    for i in range(n - 1):
        hits = np.nonzero(rng.random(n - 1 - i) < p)[0]
        for j in hits:
            edges.append((i, i + 1 + int(j)))
    return from_edges(n, edges)


def _gen_power_law(spec: FamilySpec) -> Graph:
    n, lam, k_min = _need(
        spec,
        n=lambda v: v >= 0,
        exponent=lambda v: v > 2.0,
        k_min=lambda v: v >= 1,
    )
    if n == 0:
        return from_edges(0, [])
    k_max = max(1, n - 1)
    if k_min > k_max:
        raise ParameterError(f"k_min={k_min} exceeds max degree {k_max}")
    ks = np.arange(k_min, k_max + 1, dtype=np.float64)
    pmf = ks ** (-lam)
    cdf = np.cumsum(pmf / pmf.sum())
    rng = np.random.default_rng(spec.seed)

    def draw(count):
        return k_min + np.searchsorted(cdf, rng.random(count), side="right")

    degrees = draw(n)
    # odd stub total cannot be paired: redraw node 0's degree until even
    attempts = 0
    while degrees.sum() % 2 == 1:
        degrees[0] = draw(1)[0]
        attempts += 1
        if attempts > 10_000:
            raise ParameterError("degree distribution cannot reach an even sum")

    stubs = np.repeat(np.arange(n), degrees)
    rng.shuffle(stubs)
    u = np.minimum(stubs[0::2], stubs[1::2])
    v = np.maximum(stubs[0::2], stubs[1::2])
    keep = u != v
    key = u[keep].astype(np.int64) * n + v[keep]
    uniq = np.unique(key)
    return from_edges(n, np.column_stack([uniq // n, uniq % n]))


def generate_geometric(spec: FamilySpec) -> tuple[Graph, GeometricLayout]:
    """Random geometric graph in the unit square plus its point layout.

    Edges connect pairs strictly closer than r (compared as squared
    distance; the tiling diagnostic uses the same comparison).
    """
    # r above sqrt(2) is allowed and simply yields a complete graph
    n, r = _need(spec, n=lambda v: v >= 0, r=lambda v: v > 0.0)
    rng = np.random.default_rng(spec.seed)
    pts = rng.random((n, 2))
    r2 = r * r
    edges = []
    block = max(1, (1 << 22) // max(n, 1))
    for i0 in range(0, n, block):
        i1 = min(n, i0 + block)
        diff = pts[i0:i1, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        ii, jj = np.nonzero(d2 < r2)
        keep = (ii + i0) < jj
        edges.append(np.column_stack([ii[keep] + i0, jj[keep]]))
    edge_arr = np.concatenate(edges) if edges else np.empty((0, 2), dtype=np.int64)
    return from_edges(n, edge_arr), GeometricLayout(pts, r)


_DISPATCH = {
    "chain": _gen_chain,
    "ring": _gen_ring,
    "hub": _gen_hub,
    "star": _gen_star,
    "complete": _gen_complete,
    "complete_multipartite": _gen_multipartite,
    "binary_tree": _gen_binary_tree,
    "lattice2d": _gen_lattice,
    "lattice2d_shortcuts": _gen_lattice_shortcuts,
    "erdos_renyi": _gen_erdos_renyi,
    "power_law": _gen_power_law,
}
