"""Networked phase-oscillator dynamics.

The governing equation for node i is

    theta_i' = omega_i + (lam_i / k_i) * sum_j A_ij sin(theta_j - theta_i)

with per-node coupling lam_i = lam (regular scheme) or lam * |omega_i|
(explosive scheme). Input is injected by clamping the phase of selected
nodes to an affine rescaling of a drive signal; clamped nodes stop obeying
the equation and instead carry the drive.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import ConfigurationError, InputRangeError
from .series import TimeSeries
from .topology import NetworkSpec

DEFAULT_DT = 0.01
RELAX_T_MAX = 200.0
RELAX_TOL = 1e-6

REGULAR = "regular"
EXPLOSIVE = "explosive"


def sample_natural_frequencies(n: int, rng) -> np.ndarray:
    """Standard-normal natural frequencies (the default distribution)."""
    return np.random.default_rng(rng).standard_normal(n)


def sample_initial_phases(n: int, rng) -> np.ndarray:
    """Uniform phases on [0, 2pi)."""
    return np.random.default_rng(rng).uniform(0.0, 2.0 * np.pi, n)


@dataclass(frozen=True)
class CouplingScheme:
    """Global coupling scale plus the rule mapping it to per-node strengths."""

    variant: str
    lam: float

    def __post_init__(self):
        if self.variant not in (REGULAR, EXPLOSIVE):
            raise ConfigurationError(f"unknown coupling variant {self.variant!r}")
        if self.lam < 0:
            raise ConfigurationError(f"coupling strength must be >= 0, got {self.lam}")

    def per_node(self, omega: np.ndarray) -> np.ndarray:
        if self.variant == REGULAR:
            return np.full(omega.shape[0], float(self.lam))
        return self.lam * np.abs(omega)


@dataclass(frozen=True)
class System:
    """Immutable bundle of network, natural frequencies and coupling."""

    net: NetworkSpec
    omega: np.ndarray
    coupling: CouplingScheme
    lam_i: np.ndarray = field(init=False)
    _deg_f: np.ndarray = field(init=False)

    def __post_init__(self):
        omega = np.ascontiguousarray(self.omega, dtype=np.float64)
        if omega.shape[0] != self.net.n:
            raise ConfigurationError(
                f"omega has {omega.shape[0]} entries for {self.net.n} nodes")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "lam_i", self.coupling.per_node(omega))
        object.__setattr__(self, "_deg_f", self.net.degrees.astype(np.float64))

    @property
    def n(self) -> int:
        return self.net.n

    def _kernel_args(self):
        return (self.omega, self.lam_i, self._deg_f,
                self.net.indptr, self.net.indices, self.net.complete)

    def with_lambda(self, lam: float) -> "System":
        return System(self.net, self.omega, replace(self.coupling, lam=lam))


@dataclass
class OscillatorState:
    """Phases (reduced to [0, 2pi)) and phase velocities at time ``t``.

    For clamped nodes ``dtheta`` carries the unreduced clamp value, i.e. the
    affine image of the drive signal, rather than a velocity.
    """

    t: float
    theta: np.ndarray
    dtheta: np.ndarray

    def copy(self) -> "OscillatorState":
        return OscillatorState(self.t, self.theta.copy(), self.dtheta.copy())


@dataclass(frozen=True)
class InputBinding:
    """Assignment of drive channels to clamped nodes.

    Node ``node_indices[c]`` is forced to ``scale * x_c(t) + offset`` where
    ``x_c`` is channel c of ``drive``.
    """

    node_indices: tuple
    drive: TimeSeries
    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        idx = tuple(int(i) for i in self.node_indices)
        object.__setattr__(self, "node_indices", idx)
        if len(idx) < 1:
            raise ConfigurationError("need at least one input node")
        if len(set(idx)) != len(idx):
            raise ConfigurationError("input node indices must be distinct")
        if min(idx) < 0:
            raise ConfigurationError("input node indices must be non-negative")
        if len(idx) != self.drive.n_channels:
            raise ConfigurationError(
                f"{len(idx)} input nodes but drive has {self.drive.n_channels} channels")

    def clamp_values(self, t) -> np.ndarray:
        """Unreduced clamp phases at time(s) t, shape (..., p)."""
        return self.scale * self.drive.at(t) + self.offset

    def index_array(self) -> np.ndarray:
        return np.asarray(self.node_indices, dtype=np.int64)


def median_frequency_node(omega: np.ndarray) -> int:
    """Node whose |omega| is the median; the default input site."""
    order = np.argsort(np.abs(omega), kind="stable")
    return int(order[omega.shape[0] // 2])


def input_scaling(drive: TimeSeries, t_max: float) -> tuple[float, float]:
    """Affine map sending the drive's min/max over [t0, t_max] to [-pi/2, pi/2].

    Restricting the fit window keeps held-out data out of the scaling.
    """
    idx_hi = min(drive.n_samples - 1, int(np.floor((t_max - drive.t0) / drive.dt + 1e-9)))
    window = drive.values[:idx_hi + 1]
    lo = float(window.min())
    hi = float(window.max())
    if hi <= lo:
        raise ConfigurationError("drive is constant over the scaling window")
    scale = np.pi / (hi - lo)
    offset = -np.pi / 2.0 - scale * lo
    return scale, offset


def kuramoto_rhs(theta: np.ndarray, system: System) -> np.ndarray:
    """Right-hand side of the phase equation at the given phases."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    if theta.shape[0] != system.n:
        raise ConfigurationError(f"expected {system.n} phases, got {theta.shape[0]}")
    return _kernels.rhs(theta, *system._kernel_args())


def initial_state(system: System, phases: np.ndarray, t: float = 0.0) -> OscillatorState:
    phases = np.ascontiguousarray(phases, dtype=np.float64) % (2.0 * np.pi)
    return OscillatorState(t, phases, kuramoto_rhs(phases, system))


def _clamp_half_grid(binding: InputBinding, t0: float, dt: float, n_steps: int) -> np.ndarray:
    """Clamp phases on the half-step grid t0, t0+dt/2, ..., t0+n_steps*dt."""
    times = t0 + 0.5 * dt * np.arange(2 * n_steps + 1)
    if not binding.drive.covers(times[0], times[-1]):
        raise InputRangeError(
            f"drive covers [{binding.drive.t0}, {binding.drive.t_end}] "
            f"but integration needs [{times[0]}, {times[-1]}]")
    return binding.clamp_values(times)


def step_rk4(state: OscillatorState, dt: float, system: System,
             binding: InputBinding | None = None) -> OscillatorState:
    """One classical RK4 step; clamped phases are overwritten from the drive."""
    if dt <= 0:
        raise ConfigurationError(f"dt must be positive, got {dt}")
    if binding is None:
        clamp_idx = np.zeros(0, dtype=np.int64)
        clamp3 = np.zeros((3, 0))
    else:
        clamp_idx = binding.index_array()
        if clamp_idx.max() >= system.n:
            raise ConfigurationError("input node index outside the network")
        clamp3 = _clamp_half_grid(binding, state.t, dt, 1)
    theta = _kernels.rk4_step(state.theta, *system._kernel_args(), dt, clamp_idx, clamp3)
    dtheta = _kernels.rhs(theta, *system._kernel_args())
    if binding is not None:
        dtheta[clamp_idx] = clamp3[2]
    return OscillatorState(state.t + dt, theta, dtheta)


def relax_to_locked(system: System, init_phases: np.ndarray,
                    t_max: float = RELAX_T_MAX, tol: float = RELAX_TOL,
                    dt: float = DEFAULT_DT,
                    check_every_t: float = 0.5) -> tuple[OscillatorState, bool]:
    """Integrate without input until phase velocities agree to within ``tol``.

    Locking means max_i |theta_i' - mean(theta')| < tol. Hitting ``t_max``
    without locking is a reported outcome, not an error.
    """
    if t_max <= 0 or tol <= 0:
        raise ConfigurationError("t_max and tol must be positive")
    theta = np.ascontiguousarray(init_phases, dtype=np.float64) % (2.0 * np.pi)
    max_steps = int(round(t_max / dt))
    check_every = max(1, int(round(check_every_t / dt)))
    steps, locked = _kernels.relax(theta, *system._kernel_args(), dt,
                                   max_steps, tol, check_every)
    dtheta = _kernels.rhs(theta, *system._kernel_args())
    return OscillatorState(steps * dt, theta, dtheta), bool(locked)


def _run(state: OscillatorState, system: System, binding: InputBinding | None,
         duration: float, sample_dt: float, dt: float,
         record_phases: bool):
    if duration < 0:
        raise ConfigurationError(f"duration must be >= 0, got {duration}")
    sample_every = int(round(sample_dt / dt))
    if sample_every < 1 or abs(sample_every * dt - sample_dt) > 1e-9 * max(1.0, sample_dt):
        raise ConfigurationError(
            f"sample_dt={sample_dt} is not an integer multiple of dt={dt}")
    n_steps = int(round(duration / dt))
    if abs(n_steps * dt - duration) > 1e-9 * max(1.0, duration):
        raise ConfigurationError(f"duration={duration} is not an integer multiple of dt={dt}")
    n_samples = n_steps // sample_every
    n_steps = n_samples * sample_every

    theta = state.theta.copy()
    if binding is None:
        clamp_idx = np.zeros(0, dtype=np.int64)
        clamp_half = np.zeros((2 * n_steps + 1, 0))
    else:
        clamp_idx = binding.index_array()
        if clamp_idx.max() >= system.n:
            raise ConfigurationError("input node index outside the network")
        clamp_half = _clamp_half_grid(binding, state.t, dt, n_steps)
        theta[clamp_idx] = clamp_half[0] % (2.0 * np.pi)

    freq = np.empty((n_samples, system.n))
    phases = np.empty((n_samples, system.n)) if record_phases else np.empty((0, system.n))
    _kernels.integrate(theta, *system._kernel_args(), dt, n_steps, sample_every,
                       clamp_idx, clamp_half, freq, phases)

    dtheta = _kernels.rhs(theta, *system._kernel_args())
    if binding is not None and n_samples > 0:
        # clamped channels carry the drive itself (unreduced), not a velocity
        sample_times_rel = sample_every * np.arange(1, n_samples + 1)
        freq[:, clamp_idx] = clamp_half[2 * sample_times_rel]
        dtheta[clamp_idx] = clamp_half[2 * n_steps]
    elif binding is not None:
        dtheta[clamp_idx] = clamp_half[2 * n_steps]

    final = OscillatorState(state.t + n_steps * dt, theta, dtheta)
    history = TimeSeries(state.t + sample_dt, sample_dt, freq) if n_samples else None
    phase_hist = TimeSeries(state.t + sample_dt, sample_dt, phases) \
        if (record_phases and n_samples) else None
    return history, phase_hist, final


def run_driven(state: OscillatorState, system: System, binding: InputBinding,
               duration: float, sample_dt: float, dt: float = DEFAULT_DT
               ) -> tuple[TimeSeries | None, OscillatorState]:
    """Clamp the input nodes and integrate, sampling phase velocities.

    Returns (history, final_state); the history is a TimeSeries with one
    channel per oscillator (clamped channels carry the clamp trace) and is
    None for a zero-length run.
    """
    history, _, final = _run(state, system, binding, duration, sample_dt, dt, False)
    return history, final


def run_autonomous(state: OscillatorState, system: System, duration: float,
                   sample_dt: float, dt: float = DEFAULT_DT,
                   record_phases: bool = False):
    """Integrate without input. With ``record_phases`` returns
    (freq_history, phase_history, final_state), else (freq_history, final_state)."""
    history, phase_hist, final = _run(state, system, None, duration, sample_dt, dt,
                                      record_phases)
    if record_phases:
        return history, phase_hist, final
    return history, final
