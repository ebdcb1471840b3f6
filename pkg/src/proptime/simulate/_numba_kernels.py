"""Numba replicate kernels.

The keyed-uniform chain must stay bit-identical to
:func:`proptime.rng.uniform`; ``tests/test_rng.py`` pins that. Kernels
are ``nogil`` so the engine can run replicate ranges on a thread pool,
and every Bernoulli draw is a pure function of its key, so results do
not depend on the thread layout.
"""

import numpy as np
from numba import njit

from .. import rng as _rng

_M1 = np.uint64(_rng.MIX_MULT_1)
_M2 = np.uint64(_rng.MIX_MULT_2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_U53 = _rng.U53
_DOM_NODE = np.uint64(_rng.DOMAIN_NODE)
_DOM_EDGE = np.uint64(_rng.DOMAIN_EDGE)


@njit(inline="always")
def _mix(x):
    x ^= x >> _S30
    x *= _M1
    x ^= x >> _S27
    x *= _M2
    return x ^ (x >> _S31)


@njit(inline="always")
def _uniform(seed, rep, step, slot, domain):
    x = _mix(seed ^ domain)
    x = _mix(x ^ rep)
    x = _mix(x ^ step)
    x = _mix(x ^ slot)
    return np.float64(x >> _S11) * _U53


@njit(cache=True, nogil=True)
def uniform_kernel(seed, rep, step, slot, domain):
    """Scalar keyed uniform, exposed for the cross-implementation test."""
    return _uniform(np.uint64(seed), np.uint64(rep), np.uint64(step),
                    np.uint64(slot), np.uint64(domain))


@njit(cache=True, nogil=True)
def run_replicates_node(indptr, indices, src, thresholds, seed,
                        rep_lo, rep_hi, max_steps, out):
    """SI hitting times for replicates [rep_lo, rep_hi), per-node draws.

    Infected-neighbor counts are maintained incrementally (infection
    never retreats), so a whole replicate costs O(edges) for the count
    updates plus O(susceptibles) per step for the draws.
    Writes the step count (or -1 on timeout) into out[rep - rep_lo].
    """
    n = len(indptr) - 1
    seed_u = np.uint64(seed)
    infected = np.zeros(n, np.bool_)
    cnt = np.zeros(n, np.int64)
    susc = np.empty(n, np.int64)
    newly = np.empty(n, np.int64)
    for rep in range(rep_lo, rep_hi):
        rep_u = np.uint64(rep)
        infected[:] = False
        cnt[:] = 0
        infected[src] = True
        for e in range(indptr[src], indptr[src + 1]):
            cnt[indices[e]] += 1
        count = 0
        for v in range(n):
            if v != src:
                susc[count] = v
                count += 1
        t = 0
        res = -1
        while count > 0:
            if t >= max_steps:
                break
            t_u = np.uint64(t)
            m_new = 0
            w = 0
            for i in range(count):
                v = susc[i]
                hit = False
                if cnt[v] > 0:
                    u = _uniform(seed_u, rep_u, t_u, np.uint64(v), _DOM_NODE)
                    hit = u < thresholds[cnt[v]]
                if hit:
                    newly[m_new] = v
                    m_new += 1
                else:
                    susc[w] = v
                    w += 1
            for i in range(m_new):
                u_node = newly[i]
                infected[u_node] = True
                for e in range(indptr[u_node], indptr[u_node + 1]):
                    cnt[indices[e]] += 1
            count = w
            t += 1
            if count == 0:
                res = t
        if n == 1:
            res = 0
        out[rep - rep_lo] = res


@njit(cache=True, nogil=True)
def run_replicates_edge(indptr, indices, src, p, seed,
                        rep_lo, rep_hi, max_steps, out):
    """Same process with one keyed draw per directed infection attempt.

    The attempt (u -> v) at step t reads slot u*n + v, so runs at
    different p share every uniform (common random numbers).
    """
    n = len(indptr) - 1
    n_u = np.uint64(n)
    seed_u = np.uint64(seed)
    infected = np.zeros(n, np.bool_)
    susc = np.empty(n, np.int64)
    newly = np.empty(n, np.int64)
    for rep in range(rep_lo, rep_hi):
        rep_u = np.uint64(rep)
        infected[:] = False
        infected[src] = True
        count = 0
        for v in range(n):
            if v != src:
                susc[count] = v
                count += 1
        t = 0
        res = -1
        while count > 0:
            if t >= max_steps:
                break
            t_u = np.uint64(t)
            m_new = 0
            w = 0
            for i in range(count):
                v = susc[i]
                hit = False
                for e in range(indptr[v], indptr[v + 1]):
                    u_node = indices[e]
                    if infected[u_node]:
                        slot = np.uint64(u_node) * n_u + np.uint64(v)
                        u = _uniform(seed_u, rep_u, t_u, slot, _DOM_EDGE)
                        if u < p:
                            hit = True
                            break
                if hit:
                    newly[m_new] = v
                    m_new += 1
                else:
                    susc[w] = v
                    w += 1
            for i in range(m_new):
                infected[newly[i]] = True
            count = w
            t += 1
            if count == 0:
                res = t
        if n == 1:
            res = 0
        out[rep - rep_lo] = res
