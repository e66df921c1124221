"""Uniformly sampled time series with interpolation and CSV round-trip."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, InputRangeError

# Tolerance (as a fraction of dt) when snapping a time to the sample grid.
GRID_TOL = 1e-6


@dataclass
class TimeSeries:
    """Scalar or vector signal sampled at a fixed interval.

    ``values`` has shape (n_samples, n_channels); scalar series are stored
    as a single column. Lookups between samples use linear interpolation;
    lookups outside [t0, t_end] raise :class:`InputRangeError`.
    """

    t0: float
    dt: float
    values: np.ndarray
    channel_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.values.ndim != 2:
            raise ConfigurationError("values must be 1D or 2D (samples x channels)")
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(self.values)):
            raise ConfigurationError("series contains NaN or Inf samples")
        if not self.channel_names:
            self.channel_names = tuple(f"ch{i}" for i in range(self.values.shape[1]))
        elif len(self.channel_names) != self.values.shape[1]:
            raise ConfigurationError("channel_names length does not match channels")

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_channels(self) -> int:
        return self.values.shape[1]

    @property
    def t_end(self) -> float:
        return self.t0 + (self.n_samples - 1) * self.dt

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)

    def channel(self, i: int = 0) -> np.ndarray:
        return self.values[:, i]

    def with_t0(self, t0: float) -> "TimeSeries":
        """Same samples re-anchored to start at ``t0``."""
        return TimeSeries(t0, self.dt, self.values.copy(), self.channel_names)

    def covers(self, t_lo: float, t_hi: float) -> bool:
        slack = GRID_TOL * self.dt
        return self.t0 - slack <= t_lo and t_hi <= self.t_end + slack

    def at(self, t) -> np.ndarray:
        """Linear interpolation at time(s) ``t``.

        Scalar ``t`` returns a (n_channels,) vector; an array of times
        returns (len(t), n_channels).
        """
        t = np.asarray(t, dtype=np.float64)
        scalar = t.ndim == 0
        tq = np.atleast_1d(t)
        pos = (tq - self.t0) / self.dt
        if np.any(pos < -GRID_TOL) or np.any(pos > self.n_samples - 1 + GRID_TOL):
            raise InputRangeError(
                f"lookup outside [{self.t0}, {self.t_end}] "
                f"(queried [{tq.min()}, {tq.max()}])"
            )
        pos = np.clip(pos, 0.0, self.n_samples - 1)
        lo = np.floor(pos).astype(np.int64)
        lo = np.minimum(lo, self.n_samples - 2) if self.n_samples > 1 else lo
        frac = pos - lo
        if self.n_samples == 1:
            out = np.repeat(self.values, len(tq), axis=0)
        else:
            out = (1.0 - frac)[:, None] * self.values[lo] + frac[:, None] * self.values[lo + 1]
        return out[0] if scalar else out

    def index_of(self, t: float) -> int:
        """Index of the sample at exactly ``t`` (must lie on the grid)."""
        pos = (t - self.t0) / self.dt
        idx = int(round(pos))
        if abs(pos - idx) > GRID_TOL:
            raise InputRangeError(f"time {t} is not on the sample grid (t0={self.t0}, dt={self.dt})")
        if not 0 <= idx < self.n_samples:
            raise InputRangeError(f"time {t} outside [{self.t0}, {self.t_end}]")
        return idx

    def to_csv(self, path) -> None:
        """Write ``# t0=... dt=...`` comment, header row, then one row per sample."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# t0={self.t0!r} dt={self.dt!r}\n")
            fh.write("t," + ",".join(self.channel_names) + "\n")
            ts = self.times()
            for k in range(self.n_samples):
                row = ",".join(repr(float(v)) for v in self.values[k])
                fh.write(f"{float(ts[k])!r},{row}\n")


def series_from_csv(path) -> TimeSeries:
    """Read a series written by :meth:`TimeSeries.to_csv`."""
    with open(path, "r", encoding="utf-8") as fh:
        meta = fh.readline().strip()
        if not meta.startswith("# t0="):
            raise ConfigurationError(f"{path}: missing '# t0=... dt=...' comment line")
        parts = dict(kv.split("=", 1) for kv in meta[2:].split())
        t0 = float(parts["t0"])
        dt = float(parts["dt"])
        header = fh.readline().strip().split(",")
        names = tuple(header[1:])
        data = [[float(v) for v in line.strip().split(",")] for line in fh if line.strip()]
    arr = np.asarray(data, dtype=np.float64)
    if arr.size == 0:
        raise ConfigurationError(f"{path}: no samples")
    return TimeSeries(t0, dt, arr[:, 1:], names)
