"""Tap-delay linear readout of oscillator frequencies.

The readout of (s, dt)-type maps, for each retained oscillator i and tap
j = 1..s, the sampled phase velocity theta_i'(t - j*dt) to the outputs

    f_l(t) = sum_i sum_j w[l, i, j] * theta_i'(t - j*dt)

Weights minimize mean squared error over the training rows plus an
optional ridge penalty:

    (1/M) sum_t ||y(t) - f(t)||^2 + ridge * ||w||^2

Feature columns are oscillator-major, tap-minor; this ordering is part of
the weight-file format.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConfigurationError, InputRangeError
from .series import GRID_TOL, TimeSeries

DEFAULT_RIDGE = 1e-8

# Relative singular-value cutoff for the ridge-free minimum-norm solve.
# Directions below this floor are indistinguishable from integration noise
# in the sampled frequencies and inverting them only amplifies it.
DEFAULT_RCOND = 1e-6


@dataclass(frozen=True)
class ReadoutConfig:
    """Number of taps, tap spacing, and input-node handling."""

    s: int = 10
    delta_t: float = 0.1
    include_input_nodes: bool = False

    def __post_init__(self):
        if self.s < 1:
            raise ConfigurationError(f"need s >= 1 taps, got {self.s}")
        if self.delta_t <= 0:
            raise ConfigurationError(f"delta_t must be positive, got {self.delta_t}")


@dataclass
class ReadoutModel:
    """Trained readout: weights of shape (q, n_features)."""

    weights: np.ndarray
    ridge: float
    config: ReadoutConfig | None = None
    condition_estimate: float = float("nan")
    rcond: float = DEFAULT_RCOND
    channels: np.ndarray | None = None
    seed: int | None = None

    def predict(self, features: np.ndarray) -> np.ndarray:
        return features @ self.weights.T


def build_features(history: TimeSeries, cfg: ReadoutConfig, eval_times,
                   exclude=()) -> np.ndarray:
    """Feature matrix with one row per evaluation time.

    Row t holds theta_i'(t - j*delta_t) for each retained oscillator i
    (ascending original index, minus ``exclude``) and tap j = 1..s,
    oscillator-major. Tap times must land on the history grid.
    """
    tap_steps = round(cfg.delta_t / history.dt)
    if tap_steps < 1 or abs(tap_steps * history.dt - cfg.delta_t) > 1e-9:
        raise ConfigurationError(
            f"delta_t={cfg.delta_t} is not a multiple of the sampling interval {history.dt}")
    eval_times = np.asarray(list(np.atleast_1d(eval_times)), dtype=np.float64)
    pos = (eval_times - history.t0) / history.dt
    idx = np.round(pos).astype(np.int64)
    if np.any(np.abs(pos - idx) > GRID_TOL):
        raise ConfigurationError("evaluation times must lie on the history sample grid")
    taps = tap_steps * np.arange(1, cfg.s + 1)
    time_idx = idx[:, None] - taps[None, :]
    if time_idx.min() < 0 or idx.max() >= history.n_samples:
        raise InputRangeError(
            f"history [{history.t0}, {history.t_end}] does not cover taps for "
            f"eval times [{eval_times.min()}, {eval_times.max()}]")
    keep = np.setdiff1d(np.arange(history.n_channels), np.asarray(exclude, dtype=np.int64))
    sub = history.values[:, keep]
    feats = sub[time_idx]                      # (M, s, K)
    feats = np.swapaxes(feats, 1, 2)           # (M, K, s): oscillator-major
    return np.ascontiguousarray(feats.reshape(len(eval_times), keep.size * cfg.s))


def _spd_solve_with_cond(g: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Cholesky solve of a symmetric positive definite system plus a cheap
    1-norm condition estimate of the system matrix."""
    anorm = np.abs(g).sum(axis=0).max()
    c, low = scipy.linalg.cho_factor(g, check_finite=False)
    x = scipy.linalg.cho_solve((c, low), b, check_finite=False)
    rcond_est, info = scipy.linalg.lapack.dpocon(c, anorm, uplo=b"L" if low else b"U")
    cond = float("inf") if (info != 0 or rcond_est == 0) else 1.0 / rcond_est
    return x, cond


def fit(features: np.ndarray, targets: np.ndarray, ridge: float = DEFAULT_RIDGE, *,
        config: ReadoutConfig | None = None, rcond: float = DEFAULT_RCOND,
        channels: np.ndarray | None = None, seed: int | None = None) -> ReadoutModel:
    """Least-squares readout weights.

    With ridge > 0 the unique minimizer of the penalized objective is
    computed by Cholesky on the regularized normal equations, switching to
    the dual (Gram) form when there are more features than rows. With
    ridge = 0 the minimum-norm solution is returned via SVD, truncating
    singular values below ``rcond`` relative to the largest; the
    condition estimate is flagged on the model either way.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    if y.ndim == 1:
        y = y[:, None]
    if x.ndim != 2 or y.shape[0] != x.shape[0]:
        raise ConfigurationError("features and targets must have matching rows")
    if ridge < 0:
        raise ConfigurationError(f"ridge must be >= 0, got {ridge}")
    m, d = x.shape

    if ridge == 0.0:
        w, _, rank, svals = np.linalg.lstsq(x, y, rcond=rcond)
        if rank > 0 and svals[0] > 0:
            cond = float(svals[0] / svals[rank - 1])
        else:
            cond = float("inf")
        return ReadoutModel(np.ascontiguousarray(w.T), 0.0, config, cond, rcond,
                            channels, seed)

    if m < d:
        warnings.warn(
            f"readout fit is underdetermined ({m} rows for {d} features); "
            "the ridge penalty selects among the interpolants",
            RuntimeWarning, stacklevel=2)
        gram = x @ x.T
        gram[np.diag_indices_from(gram)] += m * ridge
        alpha, cond = _spd_solve_with_cond(gram, y)
        w = x.T @ alpha
    else:
        gram = x.T @ x
        gram[np.diag_indices_from(gram)] += m * ridge
        w, cond = _spd_solve_with_cond(gram, x.T @ y)
    return ReadoutModel(np.ascontiguousarray(w.T), float(ridge), config, cond, rcond,
                        channels, seed)


def evaluate(model: ReadoutModel, features: np.ndarray, targets: np.ndarray) -> float:
    """Mean over rows of the squared output-vector error."""
    y = np.asarray(targets, dtype=np.float64)
    if y.ndim == 1:
        y = y[:, None]
    pred = model.predict(np.asarray(features, dtype=np.float64))
    if pred.shape != y.shape:
        raise ConfigurationError(f"prediction shape {pred.shape} != target shape {y.shape}")
    resid = y - pred
    return float((resid ** 2).sum(axis=1).mean())


def save_model(model: ReadoutModel, path) -> None:
    """Binary weight file carrying the tap layout and fit metadata."""
    cfg = model.config or ReadoutConfig()
    np.savez(
        path,
        weights=model.weights,
        s=cfg.s,
        delta_t=cfg.delta_t,
        include_input_nodes=cfg.include_input_nodes,
        ridge=model.ridge,
        rcond=model.rcond,
        condition_estimate=model.condition_estimate,
        channels=model.channels if model.channels is not None else np.zeros(0, np.int64),
        seed=-1 if model.seed is None else model.seed,
        feature_order="oscillator-major, tap-minor, taps j=1..s at t - j*delta_t",
    )


def load_model(path) -> ReadoutModel:
    with np.load(path, allow_pickle=False) as data:
        cfg = ReadoutConfig(int(data["s"]), float(data["delta_t"]),
                            bool(data["include_input_nodes"]))
        channels = data["channels"]
        seed = int(data["seed"])
        return ReadoutModel(
            weights=data["weights"],
            ridge=float(data["ridge"]),
            config=cfg,
            condition_estimate=float(data["condition_estimate"]),
            rcond=float(data["rcond"]),
            channels=channels if channels.size else None,
            seed=None if seed < 0 else seed,
        )
