"""Synchronous SI propagation and Monte Carlo estimation.

Per step, every susceptible node with k currently-infected neighbors
becomes infected with probability 1 - (1-p)^k, all nodes in parallel;
new infections start transmitting the next step. The per-node Bernoulli
is distributionally identical to independent per-edge attempts; an
explicit per-edge mode (``mode="edge"``) exists for common-random-number
couplings across p.

Thresholds 1 - q^k are tabulated once per run by sequential
multiplication, so the numba and numpy backends (and :func:`step`)
compare uniforms against identical doubles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import rng as _rng
from ..backend import active_backend
from ..errors import ConnectivityError, EstimationError, ParameterError
from ..graph import Graph, diameter, is_connected
from .types import InfectionState, McEstimate, SimParams

_MODES = ("node", "edge")


def attack_thresholds(p: float, max_degree: int) -> np.ndarray:
    """thr[k] = 1 - (1-p)^k via sequential multiplication (k = 0..max_degree)."""
    q = 1.0 - p
    qpow = np.empty(max_degree + 1)
    qpow[0] = 1.0
    for k in range(1, max_degree + 1):
        qpow[k] = qpow[k - 1] * q
    return 1.0 - qpow


def default_max_steps(g: Graph, p: float) -> int:
    """Step cutoff 100 * ceil((diameter + ln n) / p).

    Ten times the general upper-bound scale, so hitting it signals a bug
    (or a disconnected graph) rather than bad luck.
    """
    n = max(g.node_count, 1)
    return max(1, 100 * math.ceil((diameter(g) + math.log(n)) / p))


def expected_new_infections(infected_count: int, susceptible_count: int,
                            p: float) -> float:
    """Mean one-step infection count under perfect mixing: S*(1-(1-p)^I).

    For small p this approaches p*S*I, the classic SI mean-field rate.
    """
    if infected_count < 0 or susceptible_count < 0:
        raise ParameterError("counts must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p={p} outside [0, 1]")
    return susceptible_count * (1.0 - (1.0 - p) ** infected_count)


def initial_state(g: Graph, src: int) -> InfectionState:
    if not 0 <= src < g.node_count:
        raise ParameterError(f"source {src} out of range")
    mask = np.zeros(g.node_count, dtype=bool)
    mask[src] = True
    return InfectionState(mask, 0)


def step(g: Graph, state: InfectionState, p: float, master_seed: int,
         replicate: int = 0, mode: str = "node") -> InfectionState:
    """One synchronous transition; draws are keyed by state.step_count."""
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}")
    if not 0.0 < p <= 1.0:
        raise ParameterError(f"p={p} outside (0, 1]")
    n = g.node_count
    mask = state.mask
    if len(mask) != n:
        raise ParameterError("state does not match graph size")
    new_mask = mask.copy()
    susc = np.flatnonzero(~mask)
    t = state.step_count
    if mode == "node":
        counts = np.array([int(mask[g.neighbors(v)].sum()) for v in susc],
                          dtype=np.int64)
        cand = susc[counts > 0]
        if len(cand):
            thr = attack_thresholds(p, int(counts.max()))
            u = _rng.uniforms(master_seed, np.uint64(replicate), t, cand)
            new_mask[cand[u < thr[counts[counts > 0]]]] = True
    else:
        for v in susc:
            for u_node in g.neighbors(v):
                if mask[u_node]:
                    draw = _rng.uniform(master_seed, replicate, t,
                                        int(u_node) * n + int(v),
                                        domain=_rng.DOMAIN_EDGE)
                    if draw < p:
                        new_mask[v] = True
                        break
    return InfectionState(new_mask, t + 1)


def _resolve(g: Graph, src: int, params: SimParams) -> int:
    if not 0 <= src < g.node_count:
        raise ParameterError(f"source {src} out of range")
    if not is_connected(g):
        raise ConnectivityError("propagation time is infinite on a "
                                "disconnected graph")
    if params.max_steps is not None:
        return params.max_steps
    return default_max_steps(g, params.p)


def _run_range(g: Graph, src: int, params: SimParams, rep_lo: int,
               rep_hi: int, max_steps: int, mode: str,
               out: np.ndarray) -> None:
    """Fill out[0:rep_hi-rep_lo] with results for replicates [rep_lo, rep_hi)."""
    if active_backend() == "numba":
        from . import _numba_kernels as k

        seed = np.uint64(params.master_seed)
        if mode == "node":
            thresholds = attack_thresholds(params.p, int(g.degrees.max(initial=0)))
            k.run_replicates_node(g.indptr, g.indices, src, thresholds,
                                  seed, rep_lo, rep_hi, max_steps, out)
        else:
            k.run_replicates_edge(g.indptr, g.indices, src, params.p,
                                  seed, rep_lo, rep_hi, max_steps, out)
    else:
        from . import _numpy_kernels as k

        adj = k.build_adjacency(g.indptr, g.indices)
        reps = np.arange(rep_lo, rep_hi, dtype=np.uint64)
        if mode == "node":
            thresholds = attack_thresholds(params.p, int(g.degrees.max(initial=0)))
            out[:] = k.run_batch_node(adj, src, thresholds,
                                      params.master_seed, reps, max_steps)
        else:
            out[:] = k.run_batch_edge(adj, src, params.p,
                                      params.master_seed, reps, max_steps)


def run_once(g: Graph, src: int, params: SimParams, replicate_index: int = 0,
             mode: str = "node") -> int | None:
    """Steps until all nodes are infected, or None on timeout."""
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}")
    max_steps = _resolve(g, src, params)
    out = np.full(1, -1, dtype=np.int64)
    _run_range(g, src, params, replicate_index, replicate_index + 1,
               max_steps, mode, out)
    return None if out[0] < 0 else int(out[0])


def trace_once(g: Graph, src: int, params: SimParams,
               replicate_index: int = 0, mode: str = "node"):
    """Like run_once, also returning the (step, infected_count) trace."""
    max_steps = _resolve(g, src, params)
    state = initial_state(g, src)
    trace = [(0, state.infected_count)]
    while not state.complete and state.step_count < max_steps:
        state = step(g, state, params.p, params.master_seed,
                     replicate=replicate_index, mode=mode)
        trace.append((state.step_count, state.infected_count))
    result = state.step_count if state.complete else None
    return result, trace


def format_trace(trace) -> str:
    return "".join(f"{t} {k}\n" for t, k in trace)


def monte_carlo(g: Graph, src: int, params: SimParams, replicate_count: int,
                threads: int = 1, mode: str = "node") -> McEstimate:
    """Aggregate run_once over replicate indices 0..replicate_count-1.

    Bit-identical for any thread count: each replicate's draws are keyed
    by its index, and results land in a replicate-indexed array before
    any statistic is formed.
    """
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}")
    if replicate_count < 2:
        raise ParameterError("need at least two replicates")
    if threads < 1:
        raise ParameterError("threads must be at least 1")
    max_steps = _resolve(g, src, params)

    if active_backend() == "numba":
        chunk = max(1, -(-replicate_count // threads))
    else:
        chunk = max(1, min(replicate_count,
                           (1 << 24) // max(g.node_count, 1)))
    ranges = [(lo, min(lo + chunk, replicate_count))
              for lo in range(0, replicate_count, chunk)]

    results = np.full(replicate_count, -1, dtype=np.int64)

    def work(bounds):
        lo, hi = bounds
        _run_range(g, src, params, lo, hi, max_steps, mode, results[lo:hi])

    if threads == 1 or len(ranges) == 1:
        for bounds in ranges:
            work(bounds)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, ranges))

    return estimate_from_results(results)


def estimate_from_results(results: np.ndarray) -> McEstimate:
    """Summary statistics over a replicate-indexed result array (-1 = timeout)."""
    ok = results[results >= 0]
    timeouts = int(len(results) - len(ok))
    if len(ok) == 0:
        raise EstimationError("every replicate hit max_steps", timeouts)
    mean = float(ok.mean())
    se = float(ok.std(ddof=1) / math.sqrt(len(ok))) if len(ok) >= 2 else 0.0
    qs = np.percentile(ok, [0.0, 50.0, 95.0, 100.0])
    return McEstimate(
        replicates=int(len(results)),
        mean=mean,
        std_error=se,
        ci95_low=mean - 1.96 * se,
        ci95_high=mean + 1.96 * se,
        min=float(qs[0]),
        median=float(qs[1]),
        p95=float(qs[2]),
        max=float(qs[3]),
        timeouts=timeouts,
    )
