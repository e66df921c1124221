"""Supervised targets: the polynomial moving filter and m-step prediction.

Lags and lookaheads are in whole time units, matching the discrete training
steps t = 1, 2, ... used by the fitting protocol; the input series must be
sampled so that one time unit is an integer number of samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputRangeError
from .series import TimeSeries

FILTER = "filter"
PREDICT = "predict"
MULTISINE_FILTER = "multisine_filter"

DEFAULT_COEFFS = (1.0, 0.5, 0.25)

# Filter length used when the task's m counts input modes instead.
MULTISINE_FILTER_LENGTH = 5


@dataclass(frozen=True)
class TaskSpec:
    """Benchmark task selector.

    ``m`` is the filter length (filter), prediction horizon (predict), or
    input mode count (multisine_filter, which applies a fixed length-5
    filter to a multi-sine input).
    """

    kind: str
    m: int
    coeffs: tuple = DEFAULT_COEFFS
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (FILTER, PREDICT, MULTISINE_FILTER):
            raise ConfigurationError(f"unknown task kind {self.kind!r}")
        if self.m < 1:
            raise ConfigurationError(f"m must be >= 1, got {self.m}")
        if len(self.coeffs) != 3:
            raise ConfigurationError("coeffs must be (a, b, c)")
        if self.kind in (FILTER, MULTISINE_FILTER) and any(v == 0 for v in self.coeffs):
            raise ConfigurationError("filter coefficients must all be nonzero")

    @property
    def n_outputs(self) -> int:
        return self.m if self.kind == PREDICT else 1

    @property
    def filter_length(self) -> int:
        if self.kind == FILTER:
            return self.m
        if self.kind == MULTISINE_FILTER:
            return MULTISINE_FILTER_LENGTH
        return 0


def _unit_steps(x: TimeSeries) -> int:
    steps = round(1.0 / x.dt)
    if steps < 1 or abs(steps * x.dt - 1.0) > 1e-9:
        raise ConfigurationError(
            f"series dt={x.dt} does not evenly divide the 1.0 unit lag")
    return int(steps)


def task1_target(x: TimeSeries, m: int, a: float, b: float, c: float) -> TimeSeries:
    """Polynomial moving filter of the past m unit-lagged inputs:

        y(t) = (1/m) sum_{k=1..m} a x(t-k) + b x(t-k)^2 + c x(t-k)^3
    """
    if m < 1:
        raise ConfigurationError(f"m must be >= 1, got {m}")
    if x.n_channels != 1:
        raise ConfigurationError("filter task expects a scalar input series")
    step = _unit_steps(x)
    first = m * step
    if first >= x.n_samples:
        raise InputRangeError(
            f"series has {x.n_samples} samples, need more than {first} for m={m}")
    v = x.channel(0)
    n_out = x.n_samples - first
    acc = np.zeros(n_out)
    for k in range(1, m + 1):
        lagged = v[first - k * step:x.n_samples - k * step]
        acc += a * lagged + b * lagged ** 2 + c * lagged ** 3
    return TimeSeries(x.t0 + m * 1.0, x.dt, acc / m, ("task1",))


def task2_target(x: TimeSeries, m: int) -> TimeSeries:
    """m-channel prediction target, y_l(t) = x(t + l - 1) for l = 1..m.

    Channel l shifted back by l - 1 time units reproduces x exactly; the
    first channel is the current value and the last looks m - 1 ahead.
    """
    if m < 1:
        raise ConfigurationError(f"m must be >= 1, got {m}")
    if x.n_channels != 1:
        raise ConfigurationError("prediction task expects a scalar input series")
    step = _unit_steps(x)
    ahead = (m - 1) * step
    if ahead >= x.n_samples:
        raise InputRangeError(
            f"series has {x.n_samples} samples, need more than {ahead} for m={m}")
    v = x.channel(0)
    n_out = x.n_samples - ahead
    out = np.empty((n_out, m))
    for l in range(m):
        out[:, l] = v[l * step:l * step + n_out]
    names = tuple(f"ahead{l}" for l in range(m))
    return TimeSeries(x.t0, x.dt, out, names)
