"""Value types for the simulator: parameters, process state, MC summary."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import ParameterError


@dataclass(frozen=True)
class SimParams:
    """Transmission probability, step cutoff, and master seed.

    ``max_steps=None`` means "resolve the documented default for the
    graph at hand" (see :func:`proptime.simulate.default_max_steps`);
    once resolved it must be >= 1.
    """

    p: float
    max_steps: int | None = None
    master_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ParameterError(f"p={self.p} outside (0, 1]")
        if self.max_steps is not None and self.max_steps < 1:
            raise ParameterError("max_steps must be at least 1")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ParameterError("master_seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class InfectionState:
    """Which nodes hold the information, and how many steps have elapsed.

    ``mask`` is a read-only boolean array over nodes. States are
    immutable; :func:`proptime.simulate.step` returns a new one.
    """

    mask: np.ndarray
    step_count: int

    def __post_init__(self):
        m = np.ascontiguousarray(self.mask, dtype=np.bool_)
        if not m.any():
            raise ParameterError("infected set must be nonempty")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @property
    def infected_count(self) -> int:
        return int(self.mask.sum())

    @property
    def complete(self) -> bool:
        return bool(self.mask.all())

    def infected_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.mask)


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo summary of propagation times.

    Field names double as the JSON/CSV keys. ``timeouts`` counts
    replicates that hit max_steps; they are excluded from every
    statistic except the count itself.
    """

    replicates: int
    mean: float
    std_error: float
    ci95_low: float
    ci95_high: float
    min: float
    median: float
    p95: float
    max: float
    timeouts: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)
