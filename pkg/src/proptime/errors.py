"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
them (rather than bare ValueError/RuntimeError) whenever the failure is
one a caller can act on.
"""


class PropTimeError(Exception):
    """Base class for all package errors."""


class ParameterError(PropTimeError, ValueError):
    """A parameter is outside its documented domain."""


class ConnectivityError(PropTimeError):
    """The operation requires a connected graph and got a disconnected one."""


class CapacityError(PropTimeError):
    """The input exceeds a documented size cap (e.g. exact solver node limit)."""


class EstimationError(PropTimeError):
    """A Monte Carlo estimate could not be formed.

    Carries ``timeout_count`` so callers can see how many replicates hit
    the step cutoff.
    """

    def __init__(self, message: str, timeout_count: int = 0):
        super().__init__(message)
        self.timeout_count = timeout_count
