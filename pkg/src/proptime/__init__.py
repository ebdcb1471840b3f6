"""proptime: propagation time of stochastic spreading on finite networks.

Measures (Monte Carlo), solves exactly (subset Markov chain, closed
forms), and bounds (eccentricity / star-reduction Chernoff) the expected
number of synchronous steps for information starting at one node to
reach every node, when each infected-to-susceptible transmission
succeeds independently with probability p per step.
"""

from . import bounds, exact, graph, simulate
from .backend import active_backend, set_backend, use_backend
from .errors import (
    CapacityError,
    ConnectivityError,
    EstimationError,
    ParameterError,
    PropTimeError,
)

__version__ = "0.1.0"

__all__ = [
    "graph", "simulate", "exact", "bounds",
    "active_backend", "set_backend", "use_backend",
    "PropTimeError", "ParameterError", "ConnectivityError",
    "CapacityError", "EstimationError",
    "__version__",
]
