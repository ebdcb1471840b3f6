"""Simulator semantics, determinism contracts, and statistical exactness."""

import json
import math

import numpy as np
import pytest
from scipy.stats import binom, chisquare

from proptime import exact, rng
from proptime.backend import use_backend
from proptime.errors import ConnectivityError, EstimationError, ParameterError
from proptime.graph import FamilySpec, from_edges, generate
from proptime.simulate import (
    InfectionState,
    SimParams,
    attack_thresholds,
    default_max_steps,
    expected_new_infections,
    format_trace,
    initial_state,
    monte_carlo,
    run_once,
    step,
    trace_once,
)

BACKENDS = ["numba", "numpy"]


def test_params_validation():
    with pytest.raises(ParameterError):
        SimParams(p=0.0)
    with pytest.raises(ParameterError):
        SimParams(p=1.2)
    with pytest.raises(ParameterError):
        SimParams(p=0.5, max_steps=0)
    SimParams(p=1.0, max_steps=1, master_seed=2 ** 64 - 1)


def test_state_requires_nonempty():
    with pytest.raises(ParameterError):
        InfectionState(np.zeros(3, dtype=bool), 0)


def test_attack_thresholds():
    thr = attack_thresholds(0.5, 3)
    assert list(thr) == [0.0, 0.5, 0.75, 0.875]
    assert list(attack_thresholds(1.0, 2)) == [0.0, 1.0, 1.0]


def test_step_absorbing_state():
    g = generate(FamilySpec("chain", n=4))
    state = InfectionState(np.ones(4, dtype=bool), 5)
    nxt = step(g, state, 0.5, master_seed=1)
    assert nxt.complete and nxt.step_count == 6


def test_step_deterministic_spread():
    g = generate(FamilySpec("chain", n=3))
    state = step(g, initial_state(g, 0), 1.0, master_seed=0)
    assert set(state.infected_nodes()) == {0, 1}
    assert state.step_count == 1


def test_step_monotone_growth():
    g = generate(FamilySpec("erdos_renyi", n=25, edge_prob=0.15, seed=4))
    state = initial_state(g, 0)
    for _ in range(30):
        nxt = step(g, state, 0.3, master_seed=9, replicate=2)
        assert np.all(nxt.mask >= state.mask)
        assert nxt.step_count == state.step_count + 1
        state = nxt


def test_run_once_examples():
    g = generate(FamilySpec("chain", n=4))
    assert run_once(g, 0, SimParams(p=1.0, max_steps=10)) == 3
    single = from_edges(1, [])
    assert run_once(single, 0, SimParams(p=0.5, max_steps=10)) == 0


def test_run_once_disconnected():
    with pytest.raises(ConnectivityError):
        run_once(from_edges(3, [(0, 1)]), 0, SimParams(p=0.5, max_steps=5))


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("mode", ["node", "edge"])
def test_run_once_equals_step_iteration(backend, mode):
    g = generate(FamilySpec("lattice2d", side=3))
    params = SimParams(p=0.45, max_steps=500, master_seed=77)
    for rep in (0, 3, 11):
        with use_backend(backend):
            fast = run_once(g, 0, params, replicate_index=rep, mode=mode)
        slow, trace = trace_once(g, 0, params, replicate_index=rep, mode=mode)
        assert fast == slow
        counts = [k for _, k in trace]
        assert counts == sorted(counts)
        assert trace[0] == (0, 1) and trace[-1] == (fast, 9)


@pytest.mark.parametrize("mode", ["node", "edge"])
def test_backends_bit_identical(mode):
    for spec, p in [
        (FamilySpec("chain", n=12), 0.3),
        (FamilySpec("ring", n=9), 0.6),
        (FamilySpec("complete", n=20), 0.2),
        (FamilySpec("erdos_renyi", n=40, edge_prob=0.15, seed=0), 0.5),
    ]:
        g = generate(spec)
        params = SimParams(p=p, max_steps=5000, master_seed=21)
        with use_backend("numba"):
            a = monte_carlo(g, 0, params, 400, mode=mode)
        with use_backend("numpy"):
            b = monte_carlo(g, 0, params, 400, mode=mode)
        assert a == b


def test_monte_carlo_reproducible_and_thread_invariant():
    g = generate(FamilySpec("lattice2d", side=4))
    params = SimParams(p=0.5, max_steps=2000, master_seed=5)
    one = monte_carlo(g, 0, params, 600, threads=1)
    again = monte_carlo(g, 0, params, 600, threads=1)
    many = monte_carlo(g, 0, params, 600, threads=5)
    assert one == again == many


def test_monte_carlo_estimate_invariants():
    g = generate(FamilySpec("chain", n=6))
    est = monte_carlo(g, 0, SimParams(p=0.5, max_steps=5000, master_seed=3), 500)
    assert est.ci95_low == pytest.approx(est.mean - 1.96 * est.std_error)
    assert est.ci95_high == pytest.approx(est.mean + 1.96 * est.std_error)
    assert est.ci95_low <= est.mean <= est.ci95_high
    assert est.min <= est.median <= est.p95 <= est.max
    assert est.timeouts == 0
    assert est.replicates == 500


def test_monte_carlo_matches_oracle():
    for spec, p in [(FamilySpec("chain", n=5), 0.5),
                    (FamilySpec("complete", n=2), 0.5),
                    (FamilySpec("star", b=4, d=2), 0.4)]:
        g = generate(spec)
        est = monte_carlo(g, 0, SimParams(p=p, max_steps=10_000, master_seed=8),
                          10_000)
        truth = exact.subset_hitting_time(g, 0, p)
        assert abs(est.mean - truth) <= 3 * est.std_error


def test_monte_carlo_timeouts():
    g = generate(FamilySpec("chain", n=30))
    with pytest.raises(EstimationError) as err:
        monte_carlo(g, 0, SimParams(p=0.5, max_steps=2, master_seed=1), 50)
    assert err.value.timeout_count == 50
    # partial timeouts: excluded from the mean, still counted
    est = monte_carlo(g, 0, SimParams(p=0.5, max_steps=58, master_seed=1), 400)
    assert 0 < est.timeouts < 400
    assert est.max <= 58


def test_monte_carlo_validation():
    g = generate(FamilySpec("chain", n=4))
    with pytest.raises(ParameterError):
        monte_carlo(g, 0, SimParams(p=0.5, max_steps=10), 1)
    with pytest.raises(ConnectivityError):
        monte_carlo(from_edges(4, [(0, 1)]), 0, SimParams(p=0.5, max_steps=10), 10)


def test_mc_estimate_json_fields():
    g = generate(FamilySpec("chain", n=4))
    est = monte_carlo(g, 0, SimParams(p=0.9, max_steps=500, master_seed=0), 50)
    payload = json.loads(est.to_json())
    assert list(payload) == ["replicates", "mean", "std_error", "ci95_low",
                             "ci95_high", "min", "median", "p95", "max",
                             "timeouts"]


def test_one_step_infection_counts_are_binomial():
    """From state (I, S) on a complete graph, new infections must follow
    Binomial(S, 1-(1-p)^I); chi-square over 1e5 keyed steps at the 1% level."""
    n, infected0, p, seed = 8, 3, 0.4, 2024
    g = generate(FamilySpec("complete", n=n))
    susc = np.arange(infected0, n)
    succ_prob = 1.0 - (1.0 - p) ** infected0
    reps = 100_000

    thr = attack_thresholds(p, n - 1)[infected0]
    u = rng.uniforms(seed, np.arange(reps, dtype=np.uint64)[:, None], 0,
                     susc[None, :])
    new_counts = (u < thr).sum(axis=1)

    # pin a sample of those draws to the public step() machinery
    mask = np.zeros(n, dtype=bool)
    mask[:infected0] = True
    for rep in range(50):
        nxt = step(g, InfectionState(mask, 0), p, master_seed=seed, replicate=rep)
        assert nxt.infected_count - infected0 == new_counts[rep]

    observed = np.bincount(new_counts, minlength=len(susc) + 1)
    expected = binom.pmf(np.arange(len(susc) + 1), len(susc), succ_prob) * reps
    assert expected.min() >= 5
    result = chisquare(observed, expected)
    assert result.pvalue >= 0.01


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("mode", ["node", "edge"])
def test_coupling_monotone_in_p(backend, mode):
    """With shared keyed draws, raising p can never slow completion."""
    g = generate(FamilySpec("erdos_renyi", n=30, edge_prob=0.15, seed=1))
    lo = SimParams(p=0.3, max_steps=5000, master_seed=44)
    hi = SimParams(p=0.6, max_steps=5000, master_seed=44)
    with use_backend(backend):
        for rep in range(200):
            t_lo = run_once(g, 0, lo, replicate_index=rep, mode=mode)
            t_hi = run_once(g, 0, hi, replicate_index=rep, mode=mode)
            assert t_hi <= t_lo


def test_expected_new_infections():
    assert expected_new_infections(1, 1, 0.5) == 0.5
    assert expected_new_infections(2, 3, 0.5) == 2.25
    value = expected_new_infections(10, 100, 0.001)
    mean_field = 0.001 * 100 * 10
    assert abs(value - mean_field) / mean_field < 0.005
    assert value == pytest.approx(0.9955119790251261)
    with pytest.raises(ParameterError):
        expected_new_infections(-1, 3, 0.5)


def test_default_max_steps():
    g = generate(FamilySpec("chain", n=5))
    want = 100 * math.ceil((4 + math.log(5)) / 0.5)
    assert default_max_steps(g, 0.5) == want


def test_trace_format():
    g = generate(FamilySpec("chain", n=3))
    result, trace = trace_once(g, 0, SimParams(p=1.0, max_steps=10))
    assert result == 2
    assert format_trace(trace) == "0 1\n1 2\n2 3\n"
