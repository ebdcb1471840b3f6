"""Analytic bounds on expected propagation time.

Lower bound: at least eccentricity(src) successful hops are needed, each
succeeding with probability p. Upper bound: prune the graph to its BFS
tree, widen every root-to-leaf path to the source's eccentricity d, and
treat the result as a star with b branches (one per leaf). Chernoff's
inequality bounds each branch's progress, giving a time tau = (8/p)(d +
ln b) by which completion probability is at least 1 - 1/e; the
hitting-time lemma E[T] <= tau/(1-eps) finishes the job.

All logarithms are natural.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binom

from .errors import ParameterError
from .graph import GeometricLayout, Graph, bfs_tree, eccentricity

_INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class StarReduction:
    """Branch depth d (= source eccentricity) and count b (= BFS-tree leaves)."""

    d: int
    b: int


@dataclass(frozen=True)
class BoundReport:
    """Lower/upper bounds plus the intermediate quantities behind them."""

    lower: float
    reduction: StarReduction
    tau: float
    epsilon: float
    upper: float
    p: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True)
class TilingReport:
    """Unit-square tiling diagnostic for geometric graphs.

    Tiles have side r/sqrt(2), so co-tiled nodes form a clique; partial
    tiles at the top/right edges count as tiles. The corner-to-corner
    path length is the conservative 2*(m-1) tile-hop count.
    """

    tiles_per_side: int
    tile_side: float
    all_tiles_occupied: bool
    occupied_fraction: float
    corner_tile_path_length: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _check_p(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"p={p} outside (0, 1]")


def lower_bound(g: Graph, src: int, p: float) -> float:
    """eccentricity(src)/p: the distance bound on expected time."""
    _check_p(p)
    return eccentricity(g, src) / p


def star_reduction(g: Graph, src: int) -> StarReduction:
    """Depth/breadth parameters of the tree-to-star replacement."""
    if g.node_count < 2:
        raise ParameterError("star reduction needs at least two nodes")
    tree = bfs_tree(g, src)
    return StarReduction(d=int(tree.depth.max()), b=tree.leaf_count)


def star_upper_bound(red: StarReduction, p: float) -> tuple[float, float, float]:
    """(tau, epsilon, upper) for a star with b branches of depth d.

    tau = (8/p)(d + ln b); by Chernoff the failure probability at tau is
    at most exp(-d) <= exp(-1), so epsilon is pinned at 1/e and
    upper = tau / (1 - 1/e). d = 0 degenerates to (0, 0, 0).
    """
    _check_p(p)
    if red.d < 0 or red.b < 1:
        raise ParameterError(f"invalid reduction {red}")
    if red.d == 0:
        return 0.0, 0.0, 0.0
    tau = (8.0 / p) * (red.d + math.log(red.b))
    return tau, _INV_E, tau / (1.0 - _INV_E)


def network_upper_bound(g: Graph, src: int, p: float) -> BoundReport:
    """Compose eccentricity lower bound and star-reduction upper bound."""
    _check_p(p)
    low = lower_bound(g, src, p)
    if g.node_count < 2:
        red = StarReduction(d=0, b=0)
        return BoundReport(low, red, 0.0, 0.0, 0.0, p)
    red = star_reduction(g, src)
    tau, eps, upper = star_upper_bound(red, p)
    return BoundReport(low, red, tau, eps, upper, p)


def chernoff_tail(t: float, p: float, delta: float, branches: int = 1) -> float:
    """min(1, b * exp(-t*p*delta^2/2)): union Chernoff bound on the chance
    some branch has fewer than (1-delta)*t*p successes by time t."""
    if t < 0 or branches < 1:
        raise ParameterError("need t >= 0 and branches >= 1")
    if not 0.0 < delta <= 1.0:
        raise ParameterError(f"delta={delta} outside (0, 1]")
    return min(1.0, branches * math.exp(-t * p * delta * delta / 2.0))


def hitting_time_from_tail(tau: float, epsilon: float) -> float:
    """E[T] <= tau/(1-epsilon) whenever Pr[done by tau] >= 1-epsilon and the
    process is monotone (never leaves the target, odds only improve)."""
    if tau < 0:
        raise ParameterError("tau must be non-negative")
    if not 0.0 <= epsilon < 1.0:
        raise ParameterError(f"epsilon={epsilon} outside [0, 1)")
    return tau / (1.0 - epsilon)


def hub_bounds(n: int, p: float) -> tuple[float, float]:
    """q*ln(n+1) <= E[hub with n clients] <= ln(n+1)/ln(2/(1+q))."""
    _check_p(p)
    if n < 0:
        raise ParameterError("client count must be non-negative")
    q = 1.0 - p
    log_np1 = math.log(n + 1)
    return q * log_np1, log_np1 / math.log(2.0 / (1.0 + q))


def binomial_log_moment(n: int, q: float) -> float:
    """E[ln(k+1)] for k ~ Binomial(n, q).

    Lies in [ln(n+1) - 1/q, ln(n+1) - ln(2/(1+q))] for n >= 1; this is
    what makes the hub's expected time logarithmic.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    if not 0.0 < q < 1.0:
        raise ParameterError(f"q={q} outside (0, 1)")
    k = np.arange(n + 1)
    return float(np.dot(binom.pmf(k, n, q), np.log(k + 1.0)))


def geometric_tiling(layout: GeometricLayout) -> TilingReport:
    """Tile the unit square with side r/sqrt(2) squares and report occupancy.

    Verifies the construction's point: nodes sharing a tile are within
    distance r of each other (same squared-distance comparison the
    generator uses), hence pairwise connected.
    """
    r = layout.radius
    m = max(1, math.ceil(math.sqrt(2.0) / r))
    tile_side = r / math.sqrt(2.0)
    pts = layout.points
    ix = np.minimum((pts[:, 0] // tile_side).astype(np.int64), m - 1)
    iy = np.minimum((pts[:, 1] // tile_side).astype(np.int64), m - 1)
    tile_of = ix * m + iy

    r2 = r * r
    for tile in np.unique(tile_of):
        members = pts[tile_of == tile]
        if len(members) < 2:
            continue
        diff = members[:, None, :] - members[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        if not np.all(d2[np.triu_indices(len(members), k=1)] < r2):
            raise AssertionError("tile members not pairwise adjacent; "
                                 "tiling construction violated")

    occupied = len(np.unique(tile_of))
    total = m * m
    return TilingReport(
        tiles_per_side=m,
        tile_side=tile_side,
        all_tiles_occupied=occupied == total,
        occupied_fraction=occupied / total,
        corner_tile_path_length=2 * (m - 1),
    )
