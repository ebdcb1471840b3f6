"""Stochastic SI propagation and Monte Carlo estimation."""

from .engine import (
    attack_thresholds,
    default_max_steps,
    estimate_from_results,
    expected_new_infections,
    format_trace,
    initial_state,
    monte_carlo,
    run_once,
    step,
    trace_once,
)
from .types import InfectionState, McEstimate, SimParams

__all__ = [
    "SimParams", "InfectionState", "McEstimate", "initial_state", "step",
    "run_once", "trace_once", "format_trace", "monte_carlo",
    "estimate_from_results", "expected_new_infections", "attack_thresholds",
    "default_max_steps",
]
