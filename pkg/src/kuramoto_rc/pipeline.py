"""End-to-end training runs: relax, inject, sample, fit, score.

The protocol: run the free network until phase-locked (or a time cap),
measure the pre-input synchrony, then clamp the input node(s) to the task's
drive signal over the full task window. Phase velocities sampled every 0.1
feed the tap-delay readout, which is fit on the training rows (whole
time steps 1..train_end) and scored on the held-out rows
(train_end+1..test_end).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import (DEFAULT_DT, RELAX_T_MAX, RELAX_TOL, CouplingScheme,
                       InputBinding, OscillatorState, System, initial_state,
                       input_scaling, median_frequency_node, relax_to_locked,
                       run_autonomous, run_driven, sample_initial_phases,
                       sample_natural_frequencies)
from .errors import ConfigurationError
from .order_params import VarianceConfig, kuramoto_r, variance_r
from .readout import DEFAULT_RCOND, DEFAULT_RIDGE, ReadoutConfig, build_features, evaluate, fit
from .series import TimeSeries
from .signals import lorenz_series, mackey_glass_series, multisine_series
from .tasks import FILTER, MULTISINE_FILTER, PREDICT, TaskSpec, task1_target, task2_target
from .topology import NetworkSpec

SAMPLE_DT = 0.1
PRE_MEASURE = 20.0


@dataclass(frozen=True)
class Split:
    """Train on whole steps 1..train_end, test on train_end+1..test_end."""

    train_end: float = 4000.0
    test_end: float = 5000.0

    def __post_init__(self):
        if not (1.0 <= self.train_end < self.test_end):
            raise ConfigurationError(
                f"need 1 <= train_end < test_end, got {self.train_end}, {self.test_end}")

    @property
    def train_times(self) -> np.ndarray:
        return np.arange(1.0, self.train_end + 0.5)

    @property
    def test_times(self) -> np.ndarray:
        return np.arange(self.train_end + 1.0, self.test_end + 0.5)


DESK_SPLIT = Split(800.0, 1000.0)
FULL_SPLIT = Split(4000.0, 5000.0)


@dataclass
class FitReport:
    """Outcome of one training run."""

    train_mse: float
    test_mse: float
    condition_estimate: float
    n_train: int
    n_test: int
    locked: bool
    r: float
    r_var: float
    meta: dict = field(default_factory=dict)


def task_signal(task: TaskSpec, duration: float, dt: float, seed) -> TimeSeries:
    """The drive series a task trains against (starting at t = 0)."""
    if task.kind == FILTER:
        return lorenz_series(duration, dt, seed)
    if task.kind == PREDICT:
        return mackey_glass_series(duration, dt, seed)
    if task.kind == MULTISINE_FILTER:
        return multisine_series(duration, dt, task.m, seed)
    raise ConfigurationError(f"unknown task kind {task.kind!r}")


def task_target(task: TaskSpec, x: TimeSeries) -> TimeSeries:
    if task.kind in (FILTER, MULTISINE_FILTER):
        a, b, c = task.coeffs
        return task1_target(x, task.filter_length, a, b, c)
    return task2_target(x, task.m)


def _target_matrix(y: TimeSeries, times: np.ndarray) -> np.ndarray:
    return y.at(times)


def run_experiment(net: NetworkSpec, coupling: CouplingScheme, task: TaskSpec,
                   readout_cfg: ReadoutConfig = ReadoutConfig(),
                   split: Split = FULL_SPLIT, *, seed: int,
                   ridge: float = DEFAULT_RIDGE, rcond: float = DEFAULT_RCOND,
                   dt: float = DEFAULT_DT,
                   relax_t_max: float = RELAX_T_MAX, relax_tol: float = RELAX_TOL,
                   pre_measure: float = PRE_MEASURE,
                   var_cfg: VarianceConfig | None = None,
                   omega: np.ndarray | None = None) -> FitReport:
    """Full pipeline for one (network, coupling, task, seed) combination.

    Failure to phase-lock before the input starts is reported in the
    result, not raised; the readout is trained either way.
    """
    if omega is None:
        omega = sample_natural_frequencies(net.n, [seed, 1])
    system = System(net, omega, coupling)

    phases = sample_initial_phases(net.n, [seed, 2])
    state, locked = relax_to_locked(system, phases, relax_t_max, relax_tol, dt)

    r_pre = float("nan")
    rvar_pre = float("nan")
    if pre_measure > 0:
        cfg = var_cfg or VarianceConfig(window=pre_measure, sample_dt=SAMPLE_DT)
        freq_hist, phase_hist, state = run_autonomous(
            state, system, pre_measure, SAMPLE_DT, dt, record_phases=True)
        r_pre = float(np.mean([kuramoto_r(row) for row in phase_hist.values]))
        rvar_pre = variance_r(freq_hist, cfg)

    head = float(task.filter_length + 2)
    tail = float(task.m + 2) if task.kind == PREDICT else 2.0
    x = task_signal(task, head + split.test_end + tail, SAMPLE_DT, [seed, 3])
    x = x.with_t0(-head)

    node = median_frequency_node(omega)
    scale, offset = input_scaling(x, split.train_end)
    binding = InputBinding((node,), x, scale, offset)

    start = OscillatorState(-head, state.theta, state.dtheta)
    history, _ = run_driven(start, system, binding, head + split.test_end, SAMPLE_DT, dt)

    exclude = () if readout_cfg.include_input_nodes else binding.node_indices
    t_train = split.train_times
    t_test = split.test_times
    x_train = build_features(history, readout_cfg, t_train, exclude)
    x_test = build_features(history, readout_cfg, t_test, exclude)

    y = task_target(task, x)
    y_train = _target_matrix(y, t_train)
    y_test = _target_matrix(y, t_test)

    keep = np.setdiff1d(np.arange(net.n), np.asarray(exclude, dtype=np.int64))
    model = fit(x_train, y_train, ridge, config=readout_cfg, rcond=rcond,
                channels=keep, seed=seed)
    return FitReport(
        train_mse=evaluate(model, x_train, y_train),
        test_mse=evaluate(model, x_test, y_test),
        condition_estimate=model.condition_estimate,
        n_train=len(t_train),
        n_test=len(t_test),
        locked=locked,
        r=r_pre,
        r_var=rvar_pre,
        meta={
            "variant": coupling.variant,
            "lambda": coupling.lam,
            "task": task.kind,
            "m": task.m,
            "seed": seed,
            "input_node": node,
            "scale": scale,
            "offset": offset,
            "ridge": ridge,
            "rcond": rcond,
        },
    )
