"""Numba kernel for all-sources BFS eccentricities.

Imported lazily by :mod:`proptime.graph.metrics` only when the numba
backend is active.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def all_eccentricities(indptr, indices, n):
    """Eccentricity of every node; -1 where some node is unreachable."""
    ecc = np.empty(n, np.int64)
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        far = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du > far:
                far = du
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        ecc[s] = far if tail == n else -1
    return ecc
