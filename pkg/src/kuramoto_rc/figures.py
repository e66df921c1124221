"""Preset experiments reproducing the benchmark figures at two scales.

Each preset runs a fixed configuration, writes CSV (and an SVG plot) into
an output directory, and evaluates one qualitative pass/fail check on the
result. Desk scale (n=200, task window 1000, 3 seeds) finishes in minutes;
full scale (n=500, window 5000, 10 seeds) reproduces the benchmark setting
and takes hours.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .experiments import (ES, RS, detect_lambda_c_from_rows, error_sweep_rows,
                          mean_curve, order_sweep_rows, write_rows_csv)
from .order_params import BACKWARD, FORWARD, VarianceConfig
from .pipeline import Split
from .plotting import write_line_plot
from .readout import ReadoutConfig
from .tasks import TaskSpec

MEAN_DEGREE = 6.0
CRITICAL_OFFSET = 0.25  # run just inside the locked side of a detected transition


@dataclass(frozen=True)
class ScalePreset:
    name: str
    n: int
    split: Split
    seeds: tuple
    order_grid: tuple = tuple(round(0.1 * k, 10) for k in range(51))
    error_grid: tuple = tuple(round(0.5 + 0.25 * k, 10) for k in range(19))
    detect_grid: tuple = tuple(round(1.0 + 0.2 * k, 10) for k in range(19))


DESK = ScalePreset("desk", 200, Split(800.0, 1000.0), (1, 2, 3))
FULL = ScalePreset("full", 500, Split(4000.0, 5000.0), tuple(range(1, 11)))

SCALES = {"desk": DESK, "full": FULL}


@dataclass
class FigureReport:
    fig_id: int
    scale: str
    passed: bool
    message: str
    rows: list = field(default_factory=list)
    csv_path: str | None = None
    svg_path: str | None = None


def detect_critical_coupling(model: str, n: int, seed: int, *,
                             mean_degree: float | None = None,
                             grid=None, workers=None) -> float | None:
    """Critical coupling for one seeded network from an r_var sweep."""
    grid = tuple(grid) if grid is not None else DESK.detect_grid
    cfg = VarianceConfig(window=40.0)
    rows = order_sweep_rows(model, n, grid, [seed], mean_degree=mean_degree,
                            cfg=cfg, transient=40.0, workers=workers)
    return detect_lambda_c_from_rows(rows)


def _mean_degree_for(model: str) -> float | None:
    return MEAN_DEGREE if model == ES else None


def _fig1(preset: ScalePreset, workers) -> tuple[list[dict], bool, str]:
    rows = []
    for model in (RS, ES):
        rows += order_sweep_rows(model, preset.n, preset.order_grid, preset.seeds,
                                 mean_degree=_mean_degree_for(model), workers=workers)
    lam, r = mean_curve([row for row in rows if row["model"] == RS], "lambda", "r")
    above = lam[r > 0.3]
    if above.size == 0:
        return rows, False, "synchronization onset never reached r > 0.3"
    onset = float(above[0])
    ok = 1.2 <= onset <= 2.0
    return rows, ok, f"regular-coupling onset (first mean r > 0.3) at lambda = {onset:.2f}"


def _error_sweep_fig(model: str, preset: ScalePreset, workers,
                     check_tail: bool) -> tuple[list[dict], bool, str]:
    rows = []
    for task in (TaskSpec("filter", 5), TaskSpec("predict", 5)):
        rows += error_sweep_rows(model, preset.n, preset.error_grid, task,
                                 preset.seeds, mean_degree=_mean_degree_for(model),
                                 split=preset.split, workers=workers)
    task1 = [row for row in rows if row["task"] == "filter"]
    lam_c = detect_lambda_c_from_rows(task1)
    if lam_c is None:
        return rows, False, "no synchronization transition detected in r_var"
    lam, mse = mean_curve(task1, "lambda", "test_mse")
    lam_best = float(lam[int(np.argmin(mse))])
    ok = abs(lam_best - lam_c) <= 0.5
    msg = f"test error minimized at lambda = {lam_best:.2f}, r_var transition at {lam_c:.2f}"
    if check_tail and ok:
        tail = float(mse[-1])
        ok = tail <= 10.0 * float(mse.min())
        msg += f"; error at grid end {tail:.3g} vs minimum {mse.min():.3g}"
    return rows, ok, msg


def _fig2(preset, workers):
    return _error_sweep_fig(RS, preset, workers, check_tail=False)


def _fig3(preset, workers):
    return _error_sweep_fig(ES, preset, workers, check_tail=True)


def _per_model_lambda(preset: ScalePreset, model: str, seed: int, workers) -> float:
    lam_c = detect_critical_coupling(model, preset.n, seed,
                                     mean_degree=_mean_degree_for(model),
                                     grid=preset.detect_grid, workers=workers)
    return (lam_c if lam_c is not None else 3.0) + CRITICAL_OFFSET


def _ratio_fig(preset: ScalePreset, workers, task_kind: str, m_values,
               ratio_hi: int, ratio_lo: int) -> tuple[list[dict], bool, str]:
    rows = []
    for model in (RS, ES):
        for seed in preset.seeds:
            lam = _per_model_lambda(preset, model, seed, workers)
            for m in m_values:
                task = TaskSpec(task_kind, m)
                rows += error_sweep_rows(model, preset.n, [lam], task, [seed],
                                         mean_degree=_mean_degree_for(model),
                                         split=preset.split, workers=workers)
    ratios = {}
    for model in (RS, ES):
        sub = [row for row in rows if row["model"] == model]
        _, hi = mean_curve([r for r in sub if r["m"] == ratio_hi], "m", "test_mse")
        _, lo = mean_curve([r for r in sub if r["m"] == ratio_lo], "m", "test_mse")
        ratios[model] = float(hi[0] / lo[0])
    ok = ratios[RS] > ratios[ES]
    msg = (f"test-error growth m={ratio_hi} over m={ratio_lo}: "
           f"rs x{ratios[RS]:.2f} vs es x{ratios[ES]:.2f}")
    return rows, ok, msg


def _fig4(preset, workers):
    return _ratio_fig(preset, workers, "filter", (5, 10, 15), 15, 5)


def _fig5(preset, workers):
    return _ratio_fig(preset, workers, "multisine_filter", (1, 2, 4, 8), 8, 1)


def _fig6(preset: ScalePreset, workers) -> tuple[list[dict], bool, str]:
    degrees = (3.0, 6.0, 12.0, 24.0, 48.0, 96.0)
    task = TaskSpec("filter", 5)
    rows = []
    for k in degrees:
        for seed in preset.seeds:
            lam_c = detect_critical_coupling(ES, preset.n, seed, mean_degree=k,
                                             grid=preset.detect_grid, workers=workers)
            lam = (lam_c if lam_c is not None else 3.0) + CRITICAL_OFFSET
            rows += error_sweep_rows(ES, preset.n, [lam], task, [seed],
                                     mean_degree=k, split=preset.split,
                                     workers=workers)
    ks, mse = mean_curve(rows, "mean_degree", "test_mse")
    best = float(ks[int(np.argmin(mse))])
    ok = 6.0 <= best <= 24.0 and mse[0] > mse.min() and mse[-1] > mse.min()
    return rows, ok, (f"test error minimized at mean degree {best:g} "
                      f"(ends: {mse[0]:.3g} at k=3, {mse[-1]:.3g} at k=96)")


def _train_transition_fig(model: str, preset: ScalePreset, workers,
                          expect: str) -> tuple[list[dict], bool, str]:
    task = TaskSpec("filter", 5)
    rows = error_sweep_rows(model, preset.n, preset.error_grid, task, preset.seeds,
                            mean_degree=_mean_degree_for(model),
                            split=preset.split, ridge=0.0, workers=workers)
    lam_c = detect_lambda_c_from_rows(rows)
    if lam_c is None:
        return rows, False, "no synchronization transition detected in r_var"
    lam, tr = mean_curve(rows, "lambda", "train_mse")
    steps = np.diff(np.log10(np.maximum(tr, 1e-300)))
    k = int(np.argmax(np.abs(steps)))
    where = 0.5 * (lam[k] + lam[k + 1])
    direction = "rise" if steps[k] > 0 else "drop"
    ok = direction == expect and abs(where - lam_c) <= 0.5
    return rows, ok, (f"largest training-error step is a {direction} at "
                      f"lambda = {where:.2f} (r_var transition at {lam_c:.2f})")


def _fig7(preset, workers):
    return _train_transition_fig(RS, preset, workers, "drop")


def _fig8(preset, workers):
    return _train_transition_fig(ES, preset, workers, "rise")


_FIGURES = {1: _fig1, 2: _fig2, 3: _fig3, 4: _fig4,
            5: _fig5, 6: _fig6, 7: _fig7, 8: _fig8}

_PLOT_AXES = {
    1: ("lambda", "r", False),
    2: ("lambda", "test_mse", True),
    3: ("lambda", "test_mse", True),
    4: ("m", "test_mse", True),
    5: ("m", "test_mse", True),
    6: ("mean_degree", "test_mse", True),
    7: ("lambda", "train_mse", True),
    8: ("lambda", "train_mse", True),
}


def reproduce_figure(fig_id: int, scale: str = "desk", seeds=None,
                     out_dir=None, workers: int | None = None) -> FigureReport:
    """Run one figure preset and check its qualitative claim.

    Returns a report whose ``passed`` reflects the check; CSV and SVG are
    written when ``out_dir`` is given.
    """
    if fig_id not in _FIGURES:
        raise ConfigurationError(f"figure id must be 1..8, got {fig_id}")
    if scale not in SCALES:
        raise ConfigurationError(f"scale must be desk or full, got {scale!r}")
    preset = SCALES[scale]
    if seeds is not None:
        preset = ScalePreset(preset.name, preset.n, preset.split, tuple(seeds),
                             preset.order_grid, preset.error_grid, preset.detect_grid)

    rows, passed, message = _FIGURES[fig_id](preset, workers)
    report = FigureReport(fig_id, scale, passed, message, rows)

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        report.csv_path = os.path.join(out_dir, f"fig{fig_id}_{scale}.csv")
        write_rows_csv(rows, report.csv_path)
        x_key, y_key, logy = _PLOT_AXES[fig_id]
        curves = []
        for model in sorted({row["model"] for row in rows}):
            sub = [row for row in rows if row["model"] == model]
            xs, ys = mean_curve(sub, x_key, y_key)
            curves.append((xs, ys, model))
        report.svg_path = os.path.join(out_dir, f"fig{fig_id}_{scale}.svg")
        write_line_plot(report.svg_path, curves, title=f"figure {fig_id} ({scale})",
                        xlabel=x_key, ylabel=y_key, logy=logy)
    return report
