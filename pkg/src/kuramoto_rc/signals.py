"""Benchmark input signals: Lorenz, Mackey-Glass, and multi-sine.

The chaotic generators integrate with fixed-step RK4 at an internal step of
0.01, discard a transient, then resample and standardize (zero mean, unit
variance over the emitted window) so the drive amplitude is well defined
before phase clamping. All generators are pure functions of their
parameters and seed.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import ConfigurationError
from .series import TimeSeries

INTERNAL_DT = 0.01

LORENZ_SIGMA = 10.0
LORENZ_RHO = 28.0
LORENZ_BETA = 8.0 / 3.0

MG_BETA = 0.2
MG_GAMMA = 0.1
MG_EXPONENT = 10
MG_DELAY = 17.0


def _standardize(x: np.ndarray) -> np.ndarray:
    sd = x.std()
    if sd == 0:
        raise ConfigurationError("degenerate signal: zero variance")
    return (x - x.mean()) / sd


def _resample(fine: np.ndarray, fine_dt: float, dt: float, duration: float) -> np.ndarray:
    n_out = int(round(duration / dt)) + 1
    t_out = dt * np.arange(n_out)
    t_fine = fine_dt * np.arange(fine.shape[0])
    return np.interp(t_out, t_fine, fine)


def lorenz_series(duration: float, dt: float, seed=None, *,
                  transient: float = 100.0) -> TimeSeries:
    """Standardized x-coordinate of the Lorenz system (sigma, rho, beta) =
    (10, 28, 8/3), the canonical chaotic parameterization."""
    if duration <= 0 or dt <= 0:
        raise ConfigurationError("duration and dt must be positive")
    rng = np.random.default_rng(seed)
    state0 = rng.uniform(-15.0, 15.0, 3)
    state0[2] = abs(state0[2]) + 10.0  # start inside the attractor's basin
    n_steps = int(round((transient + duration) / INTERNAL_DT)) + 1
    trace = _kernels.lorenz_loop(state0, LORENZ_SIGMA, LORENZ_RHO, LORENZ_BETA,
                                 INTERNAL_DT, n_steps)
    skip = int(round(transient / INTERNAL_DT))
    x = trace[skip:, 0]
    values = _standardize(_resample(x, INTERNAL_DT, dt, duration))
    return TimeSeries(0.0, dt, values, ("lorenz_x",))


def mackey_glass_series(duration: float, dt: float, seed=None, *,
                        transient: float = 500.0) -> TimeSeries:
    """Standardized Mackey-Glass trace, x' = b x_d/(1 + x_d^10) - g x with
    (b, g, tau) = (0.2, 0.1, 17), the standard chaotic benchmark setting.

    The delayed value x_d = x(t - tau) comes from a linearly interpolated
    history buffer on the integration grid.
    """
    if duration <= 0 or dt <= 0:
        raise ConfigurationError("duration and dt must be positive")
    delay_steps = int(round(MG_DELAY / INTERNAL_DT))
    rng = np.random.default_rng(seed)
    x0 = 1.0 + rng.uniform(-0.2, 0.2)  # near the x* = 1 equilibrium
    n_steps = int(round((transient + duration) / INTERNAL_DT)) + 1
    hist = np.empty(delay_steps + n_steps + 1)
    hist[:delay_steps + 1] = x0
    _kernels.mackey_glass_loop(hist, MG_BETA, MG_GAMMA, MG_EXPONENT,
                               delay_steps, INTERNAL_DT, n_steps)
    skip = delay_steps + int(round(transient / INTERNAL_DT))
    x = hist[skip:]
    values = _standardize(_resample(x, INTERNAL_DT, dt, duration))
    return TimeSeries(0.0, dt, values, ("mackey_glass",))


def multisine_series(duration: float, dt: float, m: int, seed=None) -> TimeSeries:
    """Sum of m random sinusoids: x(t) = (1/m) sum_i a_i sin(b_i t + c_i) + d_i
    with a ~ U(0.5, 1.5), b ~ U(0.1, 2), c ~ U(0, 2pi), d ~ U(-0.5, 0.5)."""
    if m < 1:
        raise ConfigurationError(f"need at least one mode, got {m}")
    if duration <= 0 or dt <= 0:
        raise ConfigurationError("duration and dt must be positive")
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.5, 1.5, m)
    b = rng.uniform(0.1, 2.0, m)
    c = rng.uniform(0.0, 2.0 * np.pi, m)
    d = rng.uniform(-0.5, 0.5, m)
    t = dt * np.arange(int(round(duration / dt)) + 1)
    values = (np.sin(np.outer(t, b) + c) * a + d).mean(axis=1)
    return TimeSeries(0.0, dt, values, ("multisine",))


def multisine_modes(m: int, seed=None) -> tuple[np.ndarray, ...]:
    """The (a, b, c, d) draws behind :func:`multisine_series` for a seed."""
    rng = np.random.default_rng(seed)
    return (rng.uniform(0.5, 1.5, m), rng.uniform(0.1, 2.0, m),
            rng.uniform(0.0, 2.0 * np.pi, m), rng.uniform(-0.5, 0.5, m))
