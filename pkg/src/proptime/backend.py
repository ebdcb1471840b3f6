"""Kernel backend selection.

Hot loops (the SI step kernel and the all-sources BFS used for diameters)
exist twice: a numba ``@njit`` version and a pure numpy/scipy version.
Both consume the same keyed counter RNG, so they produce bit-identical
results; the choice is purely a speed/dependency trade-off.

The environment variable ``PROPTIME_BACKEND`` picks the default:

* unset or ``auto`` -- numba if it imports, numpy otherwise
* ``numba``         -- require numba, fail loudly if missing
* ``numpy``         -- skip numba entirely (also handy for debugging)
"""

from __future__ import annotations

import contextlib
import os

_ENV_VAR = "PROPTIME_BACKEND"
_VALID = ("auto", "numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _resolve(requested: str) -> str:
    if requested not in _VALID:
        raise ValueError(
            f"{_ENV_VAR} must be one of {_VALID}, got {requested!r}"
        )
    if requested == "numba" and not _numba_available():
        raise ImportError(f"{_ENV_VAR}=numba but numba is not importable")
    if requested == "auto":
        return "numba" if _numba_available() else "numpy"
    return requested


_active = _resolve(os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto")


def active_backend() -> str:
    """Return the backend currently in use: ``"numba"`` or ``"numpy"``."""
    return _active


def set_backend(name: str) -> str:
    """Switch backend at runtime (mainly for tests and the benchmark)."""
    global _active
    _active = _resolve(name)
    return _active


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily switch backend within a ``with`` block."""
    previous = _active
    set_backend(name)
    try:
        yield _active
    finally:
        set_backend(previous)
