"""Shared property checks, used by the topic tests and the acceptance suite.

Each check returns the measured quantities so callers can both assert and
report them.
"""

import numpy as np

from kuramoto_rc.dynamics import (CouplingScheme, System, initial_state,
                                  relax_to_locked, step_rk4)
from kuramoto_rc.experiments import ExperimentJob, parallel_map, run_experiment_job
from kuramoto_rc.order_params import VarianceConfig, kuramoto_r, variance_r
from kuramoto_rc.pipeline import Split
from kuramoto_rc.readout import fit
from kuramoto_rc.tasks import TaskSpec, task1_target, task2_target
from kuramoto_rc.topology import complete_graph, from_edges
from kuramoto_rc.series import TimeSeries

TWO_PI = 2.0 * np.pi


def phase_distance(a, b):
    """Wrap-aware absolute phase difference."""
    return np.abs((a - b + np.pi) % TWO_PI - np.pi)


def two_oscillator_lock_threshold(d_omega: float = 1.0) -> tuple[float, float]:
    """(empirical, analytic) locking threshold for two k=1 coupled oscillators.

    With theta_1' = omega_1 + lam sin(theta_2 - theta_1) the phase gap obeys
    phi' = d_omega - 2 lam sin(phi), so locking requires lam >= d_omega / 2.
    """
    net = from_edges(2, [(0, 1)])
    omega = np.array([d_omega / 2.0, -d_omega / 2.0])
    init = np.array([0.0, 0.1])

    def locks(lam: float) -> bool:
        system = System(net, omega, CouplingScheme("regular", lam))
        _, locked = relax_to_locked(system, init, t_max=400.0, tol=1e-5)
        return locked

    lo, hi = 0.25 * d_omega, 0.95 * d_omega
    assert not locks(lo) and locks(hi)
    for _ in range(14):
        mid = 0.5 * (lo + hi)
        if locks(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), d_omega / 2.0


def rk4_error_ratio() -> float:
    """Global phase error ratio err(dt) / err(dt/2) on a 10-oscillator run.

    Fourth-order stepping puts the ratio near 16; callers assert it within
    a factor of 4 of that.
    """
    net = complete_graph(10)
    rng = np.random.default_rng(5)
    omega = rng.standard_normal(10)
    system = System(net, omega, CouplingScheme("regular", 2.0))
    theta0 = rng.uniform(0.0, TWO_PI, 10)
    horizon = 5.0

    def final_phases(dt: float) -> np.ndarray:
        state = initial_state(system, theta0)
        for _ in range(int(round(horizon / dt))):
            state = step_rk4(state, dt, system)
        return state.theta

    ref = final_phases(0.003125)
    err_coarse = phase_distance(final_phases(0.1), ref).max()
    err_fine = phase_distance(final_phases(0.05), ref).max()
    return float(err_coarse / err_fine)


def order_param_properties(n_cases: int = 50) -> float:
    """Bounds and shift invariance of both order parameters over random data.

    Returns the largest shift-invariance violation of r.
    """
    rng = np.random.default_rng(0)
    worst = 0.0
    cfg = VarianceConfig(c=123.0, window=2.0, sample_dt=0.1)
    for _ in range(n_cases):
        n = int(rng.integers(2, 40))
        phases = rng.uniform(0.0, TWO_PI, n)
        r = kuramoto_r(phases)
        assert 0.0 <= r <= 1.0
        shift = rng.uniform(-10.0, 10.0)
        worst = max(worst, abs(kuramoto_r(phases + shift) - r))
        freq = rng.standard_normal((25, n)) * rng.uniform(0.0, 3.0)
        rv = variance_r(TimeSeries(0.0, 0.1, freq), cfg)
        assert 0.0 <= rv <= 1.0
    return worst


def solver_matches_normal_equations(m: int, d: int, ridge: float, seed: int = 0) -> float:
    """Relative gap between the fit weights and a dense normal-equation solve."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, d))
    y = rng.standard_normal((m, 2))
    model = fit(x, y, ridge)
    gram = x.T @ x + m * ridge * np.eye(d)
    w_ref = np.linalg.solve(gram, x.T @ y).T
    return float(np.linalg.norm(model.weights - w_ref) / np.linalg.norm(w_ref))


def task_target_hand_examples() -> None:
    """Frozen hand-computed task targets; exact assertions."""
    x = TimeSeries(0.0, 1.0, np.array([2.0, 0.0, 3.0, 1.0, 4.0]))

    y = task1_target(x, 1, 1.0, 0.0, 0.0)
    np.testing.assert_array_equal(y.channel(0), [2.0, 0.0, 3.0, 1.0])
    assert y.t0 == 1.0

    ones = TimeSeries(0.0, 1.0, np.ones(6))
    y = task1_target(ones, 3, 1.0, 0.5, 0.25)
    np.testing.assert_allclose(y.channel(0), 1.75, rtol=0, atol=0)

    # m=2 with history (x(t-2), x(t-1)) = (2, 0): (1/2)(2 + 4 + 8) = 7
    y = task1_target(x, 2, 1.0, 1.0, 1.0)
    assert y.at(2.0)[0] == 7.0

    y = task2_target(x, 1)
    np.testing.assert_array_equal(y.values, x.values)

    ramp = TimeSeries(0.0, 1.0, np.arange(6.0))
    y = task2_target(ramp, 3)
    np.testing.assert_array_equal(y.values, np.arange(4.0)[:, None] + [0.0, 1.0, 2.0])


def parallel_determinism_rows(workers: int):
    """Eight identical seeded desk-scale (tiny) jobs run under a worker pool."""
    job = ExperimentJob("rs", 24, 2.5, TaskSpec("filter", 2), seed=3,
                        split=Split(40.0, 60.0))
    results = parallel_map(run_experiment_job, [job] * 8, workers=workers)
    assert all(r.ok for r in results)
    return [r.value for r in results]
