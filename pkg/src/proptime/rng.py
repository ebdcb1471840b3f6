"""Counter-based random stream keyed by (master_seed, replicate, step, slot).

Every Bernoulli decision in the simulator is a pure function of its key,
never of execution order. That is what makes replicates independent of
thread count, lets kernels short-circuit without desynchronising, and
gives the common-random-numbers coupling across transmission
probabilities.

The concrete generator (fixed for this release) is a chained SplitMix64
finalizer: each key word is xor-folded into the state and passed through
the 64-bit avalanche function

    x ^= x >> 30;  x *= 0xBF58476D1CE4E5B9
    x ^= x >> 27;  x *= 0x94D049BB133111EB
    x ^= x >> 31

with all arithmetic modulo 2**64. Uniforms take the top 53 bits, so they
lie in [0, 1) with full double resolution.

The ``slot`` word is the node index for per-node draws and the directed
attempt id ``u * n + v`` for per-edge draws; the two uses are separated
by distinct domain constants, as is the seed-derivation helper used by
parameter sweeps.

Three implementations exist and must stay bit-identical: the pure-Python
one here (the reference), the vectorized numpy one here, and the @njit
one in ``simulate._numba_kernels``. ``tests/test_rng.py`` pins them to
each other.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB

# Arbitrary odd constants; they only need to differ.
DOMAIN_NODE = 0x8FB8E2A6B2505E1F
DOMAIN_EDGE = 0xCD9E8D57F5E0B8A5
DOMAIN_SEED = 0x94C3A4E9C1B2D30B

#: 2**-53, the uniform scaling factor.
U53 = 1.0 / (1 << 53)


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit word (reference implementation)."""
    x &= _MASK
    x ^= x >> 30
    x = (x * MIX_MULT_1) & _MASK
    x ^= x >> 27
    x = (x * MIX_MULT_2) & _MASK
    x ^= x >> 31
    return x


def key_word(seed: int, replicate: int, step: int, slot: int, domain: int) -> int:
    """The 64-bit output word for one keyed draw."""
    x = mix64(seed ^ domain)
    x = mix64(x ^ replicate)
    x = mix64(x ^ step)
    x = mix64(x ^ slot)
    return x


def uniform(seed: int, replicate: int, step: int, slot: int, domain: int = DOMAIN_NODE) -> float:
    """One keyed uniform in [0, 1)."""
    return (key_word(seed, replicate, step, slot, domain) >> 11) * U53


def derive_seed(master_seed: int, index: int) -> int:
    """Child seed for sweep position ``index`` (deterministic, documented)."""
    return key_word(master_seed, index, 0, 0, DOMAIN_SEED)


# -- vectorized (numpy) versions ------------------------------------------

_U64 = np.uint64
_M1 = _U64(MIX_MULT_1)
_M2 = _U64(MIX_MULT_2)
_S30 = _U64(30)
_S27 = _U64(27)
_S31 = _U64(31)
_S11 = _U64(11)


def _mix64_vec(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> _S30)
    x = x * _M1
    x = x ^ (x >> _S27)
    x = x * _M2
    return x ^ (x >> _S31)


def uniforms(seed, replicates, step, slots, domain=DOMAIN_NODE) -> np.ndarray:
    """Keyed uniforms for broadcastable arrays of replicate and slot ids.

    Bit-identical to calling :func:`uniform` elementwise.
    """
    with np.errstate(over="ignore"):
        x = _mix64_vec(np.asarray(_U64(seed) ^ _U64(domain)))
        x = _mix64_vec(x ^ np.asarray(replicates, dtype=_U64))
        x = _mix64_vec(x ^ _U64(step))
        x = _mix64_vec(x ^ np.asarray(slots, dtype=_U64))
    return (x >> _S11) * U53
