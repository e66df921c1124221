"""Experiment orchestration: value-typed jobs, a parallel runner, sweeps.

Jobs are plain picklable dataclasses so independent runs can go to worker
processes; results come back in submission order regardless of completion
order, and a failing job records its error in its slot instead of aborting
its siblings.
"""

from __future__ import annotations

import os
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .dynamics import EXPLOSIVE, REGULAR, CouplingScheme, sample_natural_frequencies
from .errors import ConfigurationError
from .order_params import FORWARD, VarianceConfig, detect_critical, sweep
from .pipeline import FULL_SPLIT, FitReport, ReadoutConfig, Split, run_experiment
from .tasks import TaskSpec
from .topology import complete_graph, erdos_renyi

RS = "rs"
ES = "es"

CSV_COLUMNS = ("model", "seed", "lambda", "mean_degree", "m", "task",
               "r", "r_var", "train_mse", "test_mse", "locked")


def build_network(model: str, n: int, mean_degree: float | None, seed):
    """RS runs on the complete graph, ES on an Erdos-Renyi sample."""
    if model == RS:
        return complete_graph(n)
    if model == ES:
        if mean_degree is None:
            raise ConfigurationError("ES network needs a mean degree")
        return erdos_renyi(n, mean_degree, seed)
    raise ConfigurationError(f"unknown model {model!r}")


def coupling_for(model: str, lam: float) -> CouplingScheme:
    return CouplingScheme(REGULAR if model == RS else EXPLOSIVE, lam)


@dataclass(frozen=True)
class ExperimentJob:
    """One training run at a fixed coupling strength."""

    model: str
    n: int
    lam: float
    task: TaskSpec
    seed: int
    mean_degree: float | None = None
    readout: ReadoutConfig = ReadoutConfig()
    split: Split = FULL_SPLIT
    ridge: float = 0.0
    rcond: float = 1e-6
    dt: float = 0.01


def run_experiment_job(job: ExperimentJob) -> dict:
    net = build_network(job.model, job.n, job.mean_degree, [job.seed, 0])
    report = run_experiment(
        net, coupling_for(job.model, job.lam), job.task, job.readout, job.split,
        seed=job.seed, ridge=job.ridge, rcond=job.rcond, dt=job.dt)
    return report_row(job, report)


def report_row(job: ExperimentJob, report: FitReport) -> dict:
    return {
        "model": job.model,
        "seed": job.seed,
        "lambda": job.lam,
        "mean_degree": "" if job.mean_degree is None else job.mean_degree,
        "m": job.task.m,
        "task": job.task.kind,
        "r": report.r,
        "r_var": report.r_var,
        "train_mse": report.train_mse,
        "test_mse": report.test_mse,
        "locked": int(report.locked),
    }


@dataclass(frozen=True)
class OrderSweepJob:
    """One adiabatic order-parameter sweep."""

    model: str
    n: int
    lambda_grid: tuple
    direction: str = FORWARD
    seed: int = 0
    mean_degree: float | None = None
    cfg: VarianceConfig = VarianceConfig()
    transient: float = 50.0
    dt: float = 0.01


def run_order_sweep_job(job: OrderSweepJob) -> list[dict]:
    net = build_network(job.model, job.n, job.mean_degree, [job.seed, 0])
    omega = sample_natural_frequencies(job.n, [job.seed, 1])
    variant = REGULAR if job.model == RS else EXPLOSIVE
    samples = sweep(net, omega, variant, job.lambda_grid, job.direction, job.cfg,
                    seed=[job.seed, 2], transient=job.transient, dt=job.dt)
    return [{"model": job.model, "seed": job.seed, "direction": s.direction,
             "lambda": s.lam, "r": s.r, "r_var": s.r_var} for s in samples]


@dataclass
class JobResult:
    """Slot in a parallel run: either a value or a recorded error."""

    ok: bool
    value: Any = None
    error: str | None = None


def _safe_call(args) -> JobResult:
    fn, item = args
    try:
        return JobResult(True, fn(item))
    except Exception:
        return JobResult(False, None, traceback.format_exc())


def parallel_map(fn, items, workers: int | None = None) -> list[JobResult]:
    """Apply ``fn`` to independent items, preserving input order.

    ``workers`` defaults to the machine's core count; with one worker (or
    one item) everything runs inline through the same wrapper, so results
    are identical whichever pool size executes them.
    """
    items = list(items)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")
    packed = [(fn, item) for item in items]
    if workers == 1 or len(items) <= 1:
        return [_safe_call(p) for p in packed]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_safe_call, packed))


def collect(results: list[JobResult]):
    """Values of an all-green run; raises if any slot recorded an error."""
    bad = [r for r in results if not r.ok]
    if bad:
        raise RuntimeError(f"{len(bad)} of {len(results)} jobs failed; first error:\n"
                           f"{bad[0].error}")
    return [r.value for r in results]


def error_sweep_rows(model: str, n: int, lambdas, task: TaskSpec, seeds, *,
                     mean_degree: float | None = None,
                     readout: ReadoutConfig = ReadoutConfig(),
                     split: Split = FULL_SPLIT, ridge: float = 0.0,
                     rcond: float = 1e-6, workers: int | None = None) -> list[dict]:
    """Training/test errors across a coupling grid, one row per (lambda, seed)."""
    jobs = [ExperimentJob(model, n, float(lam), task, seed, mean_degree,
                          readout, split, ridge, rcond)
            for seed in seeds for lam in lambdas]
    return collect(parallel_map(run_experiment_job, jobs, workers))


def order_sweep_rows(model: str, n: int, lambda_grid, seeds, *,
                     directions=(FORWARD,), mean_degree: float | None = None,
                     cfg: VarianceConfig = VarianceConfig(), transient: float = 50.0,
                     workers: int | None = None) -> list[dict]:
    jobs = [OrderSweepJob(model, n, tuple(float(v) for v in lambda_grid),
                          direction, seed, mean_degree, cfg, transient)
            for seed in seeds for direction in directions]
    nested = collect(parallel_map(run_order_sweep_job, jobs, workers))
    return [row for rows in nested for row in rows]


def mean_curve(rows: list[dict], x_key: str, y_key: str) -> tuple[np.ndarray, np.ndarray]:
    """Seed-averaged y over the grid of x values (ascending)."""
    xs = sorted({row[x_key] for row in rows})
    ys = [float(np.mean([row[y_key] for row in rows if row[x_key] == x])) for x in xs]
    return np.asarray(xs, dtype=np.float64), np.asarray(ys)


def detect_lambda_c_from_rows(rows: list[dict], min_jump: float = 0.05) -> float | None:
    """Critical coupling from the largest jump of the seed-averaged r_var curve."""
    from .order_params import OrderParamSample
    xs, ys = mean_curve(rows, "lambda", "r_var")
    samples = [OrderParamSample(x, 0.0, y) for x, y in zip(xs, ys)]
    return detect_critical(samples, min_jump)


def write_rows_csv(rows: list[dict], path, expected_count: int | None = None) -> None:
    """CSV dump with schema validation: consistent keys, no missing cells."""
    if not rows:
        raise ConfigurationError("no rows to write")
    if expected_count is not None and len(rows) != expected_count:
        raise ConfigurationError(f"expected {expected_count} rows, have {len(rows)}")
    keys = list(rows[0].keys())
    for i, row in enumerate(rows):
        if list(row.keys()) != keys:
            raise ConfigurationError(f"row {i} keys {list(row.keys())} != {keys}")
        if any(v is None or v == float("inf") for v in row.values()):
            raise ConfigurationError(f"row {i} has missing cells")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(keys) + "\n")
        for row in rows:
            fh.write(",".join(str(row[k]) for k in keys) + "\n")
