"""Exact expected propagation times.

Closed forms for the chain and the hub recurrence, plus the general
solver over infected-subset states: because infection only ever adds
nodes, each state's expectation depends only on strictly larger states,
so the system solves by direct substitution in decreasing-cardinality
order -- no linear algebra. The subset solver is the ground-truth oracle
the simulator and the bounds are tested against.

State masks are Python ints (bit v set = node v infected); the solver is
capped at 20 nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .errors import CapacityError, ConnectivityError, ParameterError
from .graph import Graph, is_connected

SUBSET_NODE_CAP = 20
HUB_CLIENT_CAP = 2000


def _check_p(p: float, allow_one: bool = True) -> None:
    hi_ok = (p <= 1.0) if allow_one else (p < 1.0)
    if not (0.0 < p and hi_ok):
        raise ParameterError(f"p={p} outside valid range")


def chain_time(n: int, p: float) -> float:
    """Expected steps to cross a chain of n nodes end to end: (n-1)/p."""
    _check_p(p)
    if n < 1:
        raise ParameterError("chain needs at least one node")
    return (n - 1) / p


def ring_approx(n: int, p: float) -> float:
    """Approximate expected time on a ring: (n-1)/(2p).

    The exact value has no simple closed form; use the subset solver for
    ground truth.
    """
    _check_p(p)
    if n < 3:
        raise ParameterError("ring needs at least three nodes")
    return (n - 1) / (2.0 * p)


def hub_time_table(n_max: int, p: float) -> np.ndarray:
    """Expected completion times E[0..n_max] for a hub with k clients.

    Solves (1 - q^k) E[k] = 1 + sum_{j<k} C(k,j) p^{k-j} q^j E[j] with
    E[0] = 0, where j counts the clients still missing after one step.
    Binomial weights come from scipy's log-space pmf, which stays finite
    where the naive p^k recurrence start underflows.
    """
    _check_p(p)
    if n_max < 0:
        raise ParameterError("client count must be non-negative")
    if n_max > HUB_CLIENT_CAP:
        raise CapacityError(f"hub recurrence supported up to n={HUB_CLIENT_CAP}")
    q = 1.0 - p
    expect = np.zeros(n_max + 1)
    for k in range(1, n_max + 1):
        w = binom.pmf(np.arange(k + 1), k, q)
        expect[k] = (1.0 + float(np.dot(w[:k], expect[:k]))) / (1.0 - w[k])
    return expect


def hub_time(n: int, p: float) -> float:
    """Expected time for a hub to reach all n clients."""
    return float(hub_time_table(n, p)[n])


# -- subset Markov chain solver ---------------------------------------------


@dataclass(frozen=True)
class HittingTimeTable:
    """Expected remaining steps for every state reachable from the source.

    Keys are infected-set bitmasks; the full-set state maps to 0.
    """

    node_count: int
    start_mask: int
    values: dict[int, float]

    @property
    def expected(self) -> float:
        return self.values[self.start_mask]

    def to_csv(self, f) -> None:
        close = False
        if isinstance(f, (str, bytes)):
            f, close = open(f, "w"), True
        try:
            f.write("state_mask,expected_steps\n")
            for mask in sorted(self.values):
                f.write(f"{mask},{self.values[mask]!r}\n")
        finally:
            if close:
                f.close()


@dataclass(frozen=True)
class SurvivalCurve:
    """tail[t] = Pr[T > t] for the hitting time of the all-infected state."""

    tail: np.ndarray

    def truncated_mean(self) -> float:
        """sum_t tail[t], a lower bound converging to E[T] as t_max grows."""
        return float(self.tail.sum())

    def to_csv(self, f) -> None:
        close = False
        if isinstance(f, (str, bytes)):
            f, close = open(f, "w"), True
        try:
            f.write("t,tail\n")
            for t, val in enumerate(self.tail):
                f.write(f"{t},{float(val)!r}\n")
        finally:
            if close:
                f.close()


def _solver_guard(g: Graph, src: int, p: float) -> None:
    _check_p(p)
    n = g.node_count
    if n > SUBSET_NODE_CAP:
        raise CapacityError(f"subset solver capped at {SUBSET_NODE_CAP} nodes")
    if not 0 <= src < n:
        raise ParameterError(f"source {src} out of range")
    if not is_connected(g):
        raise ConnectivityError("subset solver requires a connected graph")


def _neighbor_masks(g: Graph) -> list[int]:
    return [int(sum(1 << int(v) for v in g.neighbors(u)))
            for u in range(g.node_count)]


def _transitions(mask: int, n: int, nbr: list[int], p: float, q: float):
    """Successor masks and probabilities from one state.

    Returns (succ_masks, succ_probs, stay_prob); successors exclude the
    state itself. Nodes with join probability exactly 1 (p = 1) are
    folded in up front so the subset enumeration only spans nodes with
    0 < r < 1.
    """
    base = mask
    free: list[int] = []
    free_r: list[float] = []
    for v in range(n):
        if (mask >> v) & 1:
            continue
        k = (nbr[v] & mask).bit_count()
        if k == 0:
            continue
        r = 1.0 - q ** k
        if r >= 1.0:
            base |= 1 << v
        else:
            free.append(v)
            free_r.append(r)

    masks = [base]
    probs = [1.0]
    for v, r in zip(free, free_r):
        bit = 1 << v
        stayed = [w * (1.0 - r) for w in probs]
        joined = [w * r for w in probs]
        masks = masks + [m | bit for m in masks]
        probs = stayed + joined
    if base == mask:  # no forced joins: first entry is the self-loop
        return masks[1:], probs[1:], probs[0]
    return masks, probs, 0.0


def hitting_time_table(g: Graph, src: int, p: float) -> HittingTimeTable:
    """Exact expected remaining steps for every reachable infected set."""
    _solver_guard(g, src, p)
    n = g.node_count
    full = (1 << n) - 1
    start = 1 << src
    nbr = _neighbor_masks(g)
    q = 1.0 - p

    values: dict[int, float] = {full: 0.0}
    # iterative post-order over the reachable DAG (supersets only)
    stack: list[tuple[int, bool]] = [(start, False)]
    while stack:
        mask, ready = stack.pop()
        if mask in values:
            continue
        succ, probs, stay = _transitions(mask, n, nbr, p, q)
        if not ready:
            stack.append((mask, True))
            stack.extend((m, False) for m in succ if m not in values)
            continue
        if 1.0 - stay < 1e-300:
            raise AssertionError("state is numerically absorbing; "
                                 "impossible for p > 0 on a connected graph")
        acc = math.fsum(w * values[m] for m, w in zip(succ, probs))
        values[mask] = (1.0 + acc) / (1.0 - stay)
    return HittingTimeTable(n, start, values)


def subset_hitting_time(g: Graph, src: int, p: float) -> float:
    """Exact expected steps until every node is infected, from one source."""
    return hitting_time_table(g, src, p).expected


def subset_time_distribution(g: Graph, src: int, p: float, t_max: int) -> SurvivalCurve:
    """Exact tail probabilities Pr[T > t] for t = 0..t_max.

    Iterates the state distribution forward over the reachable states.
    """
    _solver_guard(g, src, p)
    if t_max < 1:
        raise ParameterError("t_max must be at least 1")
    n = g.node_count
    full = (1 << n) - 1
    start = 1 << src
    nbr = _neighbor_masks(g)
    q = 1.0 - p

    # enumerate reachable states and index them
    index: dict[int, int] = {}
    order: list[int] = [start]
    index[start] = 0
    trans: list[tuple[list[int], list[float], float]] = []
    head = 0
    while head < len(order):
        mask = order[head]
        head += 1
        succ, probs, stay = _transitions(mask, n, nbr, p, q)
        for m in succ:
            if m not in index:
                index[m] = len(order)
                order.append(m)
        trans.append((succ, probs, stay))

    from scipy.sparse import csr_matrix

    rows, cols, vals = [], [], []
    for i, (succ, probs, stay) in enumerate(trans):
        if stay > 0.0:
            rows.append(i)
            cols.append(i)
            vals.append(stay)
        for m, w in zip(succ, probs):
            rows.append(i)
            cols.append(index[m])
            vals.append(w)
    P = csr_matrix((vals, (rows, cols)), shape=(len(order), len(order)))

    full_idx = index.get(full)
    dist = np.zeros(len(order))
    dist[0] = 1.0
    tail = np.empty(t_max + 1)
    for t in range(t_max + 1):
        if t > 0:
            dist = dist @ P
        done = dist[full_idx] if full_idx is not None else 0.0
        tail[t] = min(1.0, max(0.0, 1.0 - done))
    return SurvivalCurve(tail)
