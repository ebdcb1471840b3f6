"""Pure numpy/scipy replicate kernels (the no-numba fallback).

A whole batch of replicates advances in lockstep, one vectorized
transition per step; finished rows drop out of the active set. Draw for
draw this matches the numba kernels bit-for-bit because both sides read
the same keyed uniforms and the same threshold table.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix

from .. import rng as _rng


def build_adjacency(indptr, indices) -> csr_matrix:
    n = len(indptr) - 1
    return csr_matrix(
        (np.ones(len(indices), dtype=np.float64), indices, indptr),
        shape=(n, n),
    )


def run_batch_node(adj, src, thresholds, seed, rep_ids, max_steps) -> np.ndarray:
    """Hitting times (or -1 on timeout) for every replicate id, node draws."""
    n = adj.shape[0]
    reps = np.asarray(rep_ids, dtype=np.uint64)
    out = np.full(len(reps), -1, dtype=np.int64)
    if n == 1:
        out[:] = 0
        return out
    infected = np.zeros((len(reps), n), dtype=bool)
    infected[:, src] = True
    active = np.arange(len(reps))
    for t in range(max_steps):
        if len(active) == 0:
            break
        inf_act = infected[active]
        counts = (inf_act.astype(np.float64) @ adj).astype(np.int64)
        rows, cols = np.nonzero(~inf_act & (counts > 0))
        u = _rng.uniforms(seed, reps[active[rows]], t, cols)
        hit = u < thresholds[counts[rows, cols]]
        infected[active[rows[hit]], cols[hit]] = True
        done = infected[active].all(axis=1)
        out[active[done]] = t + 1
        active = active[~done]
    return out


def run_batch_edge(adj, src, p, seed, rep_ids, max_steps) -> np.ndarray:
    """Edge-attempt variant: one shared draw per directed attempt."""
    n = adj.shape[0]
    reps = np.asarray(rep_ids, dtype=np.uint64)
    out = np.full(len(reps), -1, dtype=np.int64)
    if n == 1:
        out[:] = 0
        return out
    degrees = np.diff(adj.indptr)
    edge_src = np.repeat(np.arange(n, dtype=np.int64), degrees)
    edge_dst = adj.indices.astype(np.int64)
    slots = edge_src * n + edge_dst
    infected = np.zeros((len(reps), n), dtype=bool)
    infected[:, src] = True
    active = np.arange(len(reps))
    for t in range(max_steps):
        if len(active) == 0:
            break
        inf_act = infected[active]
        attempts = inf_act[:, edge_src] & ~inf_act[:, edge_dst]
        rows, eidx = np.nonzero(attempts)
        u = _rng.uniforms(seed, reps[active[rows]], t, slots[eidx],
                          domain=_rng.DOMAIN_EDGE)
        hit = u < p
        infected[active[rows[hit]], edge_dst[eidx[hit]]] = True
        done = infected[active].all(axis=1)
        out[active[done]] = t + 1
        active = active[~done]
    return out
