"""Command-line front end.

Subcommands map to the preset experiment families: order-parameter sweeps,
error-vs-coupling sweeps, task-length / mode-count / mean-degree profiles,
single runs, signal generation, and figure reproduction. Every run writes
``data.csv`` plus a fully resolved ``resolved.cfg`` (and SVG plot where
meaningful) into ``<out>/<run-id>/``.

Exit codes: 0 success, 2 configuration error, 3 all jobs failed,
4 figure check failed.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from .config import ExperimentConfig, load_config, write_resolved
from .dynamics import EXPLOSIVE, REGULAR
from .errors import ConfigurationError, InputRangeError
from .experiments import (ES, RS, ExperimentJob, build_network,
                          detect_lambda_c_from_rows, error_sweep_rows,
                          mean_curve, order_sweep_rows, parallel_map,
                          run_experiment_job, write_rows_csv)
from .figures import CRITICAL_OFFSET, detect_critical_coupling, reproduce_figure
from .order_params import BACKWARD, FORWARD
from .pipeline import Split
from .plotting import write_line_plot
from .readout import ReadoutConfig
from .signals import lorenz_series, mackey_glass_series, multisine_series
from .tasks import TaskSpec
from .topology import save_edge_list

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_CHECK_FAILED = 4


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse '0:5:0.1' (inclusive range) or '1,2,3' (explicit list)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"grid {text!r} must be start:stop:step")
        a, b, step = (float(p) for p in parts)
        if step <= 0 or b < a:
            raise ConfigurationError(f"bad grid {text!r}")
        count = int(round((b - a) / step)) + 1
        return tuple(round(a + k * step, 10) for k in range(count))
    return tuple(float(v) for v in text.split(","))


def parse_degrees(text: str) -> tuple[float, ...]:
    """Parse '3:48' (doubling sequence) or '3,6,12' (explicit list)."""
    text = text.strip()
    if ":" in text:
        a, b = (float(p) for p in text.split(":"))
        vals = []
        k = a
        while k <= b + 1e-9:
            vals.append(k)
            k *= 2
        return tuple(vals)
    return tuple(float(v) for v in text.split(","))


def parse_seeds(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _run_dir(args, command: str) -> str:
    run_id = args.run_id or f"{command}-{time.strftime('%Y%m%d-%H%M%S')}"
    path = os.path.join(args.out, run_id)
    os.makedirs(path, exist_ok=True)
    return path


def _base_config(args, command: str, **overrides) -> ExperimentConfig:
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        cfg = ExperimentConfig()
    for key, value in overrides.items():
        setattr(cfg, key, value)
    cfg.extras["command"] = command
    return cfg


def _task_from_args(args) -> TaskSpec:
    return TaskSpec(args.task, args.m)


def _split_from_args(args) -> Split:
    return Split(args.train_end, args.test_end)


def _dump_graphs(out_dir: str, model: str, n: int, mean_degree: float | None, seeds) -> None:
    for seed in seeds:
        net = build_network(model, n, mean_degree, [seed, 0])
        save_edge_list(net, os.path.join(out_dir, f"graph_seed{seed}.txt"))


def _resolve_lambda(args, model: str, n: int, mean_degree, seeds, workers) -> dict:
    """Map seed -> coupling for '--lambda critical' or a fixed value."""
    if args.lam.strip() == "critical":
        out = {}
        for seed in seeds:
            lam_c = detect_critical_coupling(model, n, seed, mean_degree=mean_degree,
                                             workers=workers)
            out[seed] = (lam_c if lam_c is not None else 3.0) + CRITICAL_OFFSET
        return out
    lam = float(args.lam)
    return {seed: lam for seed in seeds}


def cmd_sweep_order(args) -> int:
    grid = parse_grid(args.lam)
    seeds = parse_seeds(args.seeds)
    directions = {"forward": (FORWARD,), "backward": (BACKWARD,),
                  "both": (FORWARD, BACKWARD)}[args.direction]
    mean_degree = args.k if args.model == ES else None
    rows = order_sweep_rows(args.model, args.n, grid, seeds, directions=directions,
                            mean_degree=mean_degree, workers=args.workers)
    out_dir = _run_dir(args, "sweep-order")
    write_rows_csv(rows, os.path.join(out_dir, "data.csv"),
                   expected_count=len(grid) * len(seeds) * len(directions))
    cfg = _base_config(args, "sweep-order", model=args.model, n=args.n,
                       mean_degree=args.k, lambda_grid=grid, seeds=seeds)
    write_resolved(cfg, os.path.join(out_dir, "resolved.cfg"))
    if args.model == ES:
        _dump_graphs(out_dir, args.model, args.n, mean_degree, seeds)
    curves = []
    for direction in directions:
        sub = [r for r in rows if r["direction"] == direction]
        for key in ("r", "r_var"):
            xs, ys = mean_curve(sub, "lambda", key)
            curves.append((xs, ys, f"{key} ({direction})"))
    write_line_plot(os.path.join(out_dir, "plot.svg"), curves,
                    title=f"order parameters, {args.model}", xlabel="lambda", ylabel="r")
    lam_c = detect_lambda_c_from_rows(rows) if len(grid) >= 3 else None
    print(f"wrote {len(rows)} rows to {out_dir}/data.csv")
    print(f"critical coupling from r_var: "
          f"{'none detected' if lam_c is None else f'{lam_c:.3f}'}")
    return EXIT_OK


def cmd_sweep_error(args) -> int:
    grid = parse_grid(args.lam)
    seeds = parse_seeds(args.seeds)
    task = _task_from_args(args)
    split = _split_from_args(args)
    mean_degree = args.k if args.model == ES else None
    rows = error_sweep_rows(args.model, args.n, grid, task, seeds,
                            mean_degree=mean_degree, split=split,
                            ridge=args.ridge, workers=args.workers)
    out_dir = _run_dir(args, "sweep-error")
    write_rows_csv(rows, os.path.join(out_dir, "data.csv"),
                   expected_count=len(grid) * len(seeds))
    cfg = _base_config(args, "sweep-error", model=args.model, n=args.n,
                       mean_degree=args.k, lambda_grid=grid, seeds=seeds,
                       task=task, split=split, ridge=args.ridge)
    write_resolved(cfg, os.path.join(out_dir, "resolved.cfg"))
    if args.model == ES:
        _dump_graphs(out_dir, args.model, args.n, mean_degree, seeds)
    curves = []
    for key in ("train_mse", "test_mse"):
        xs, ys = mean_curve(rows, "lambda", key)
        curves.append((xs, ys, key))
    write_line_plot(os.path.join(out_dir, "plot.svg"), curves,
                    title=f"{task.kind} m={task.m}, {args.model}",
                    xlabel="lambda", ylabel="mse", logy=True)
    xs, ys = mean_curve(rows, "lambda", "test_mse")
    lam_best = xs[int(np.argmin(ys))]
    print(f"wrote {len(rows)} rows to {out_dir}/data.csv")
    print(f"mean test error minimized at lambda = {lam_best:g} ({ys.min():.4g})")
    return EXIT_OK


def _profile_command(args, values, value_key: str, task_for) -> int:
    """Shared driver for task-length / modes / degree profiles."""
    seeds = parse_seeds(args.seeds)
    split = _split_from_args(args)
    models = (RS, ES) if args.model == "both" else (args.model,)
    rows = []
    for model in models:
        mean_degree = args.k if model == ES else None
        lam_by_seed = _resolve_lambda(args, model, args.n, mean_degree, seeds,
                                      args.workers)
        for seed in seeds:
            for value in values:
                task, k_override = task_for(value)
                rows += error_sweep_rows(
                    model, args.n, [lam_by_seed[seed]], task, [seed],
                    mean_degree=k_override if k_override is not None else mean_degree,
                    split=split, ridge=args.ridge, workers=args.workers)
    out_dir = _run_dir(args, args.command)
    # degree profiles key rows by mean_degree rather than the task's m
    write_rows_csv(rows, os.path.join(out_dir, "data.csv"),
                   expected_count=len(models) * len(seeds) * len(values))
    cfg = _base_config(args, args.command, n=args.n, seeds=seeds, split=split,
                       ridge=args.ridge)
    write_resolved(cfg, os.path.join(out_dir, "resolved.cfg"))
    curves = []
    for model in models:
        sub = [r for r in rows if r["model"] == model]
        xs, ys = mean_curve(sub, value_key, "test_mse")
        curves.append((xs, ys, model))
    write_line_plot(os.path.join(out_dir, "plot.svg"), curves,
                    title=args.command, xlabel=value_key, ylabel="test mse", logy=True)
    print(f"wrote {len(rows)} rows to {out_dir}/data.csv")
    for model in models:
        sub = [r for r in rows if r["model"] == model]
        xs, ys = mean_curve(sub, value_key, "test_mse")
        pairs = ", ".join(f"{x:g}: {y:.4g}" for x, y in zip(xs, ys))
        print(f"  {model}: {pairs}")
    return EXIT_OK


def cmd_task_length(args) -> int:
    values = tuple(int(v) for v in args.m_grid.split(","))
    return _profile_command(args, values, "m",
                            lambda m: (TaskSpec(args.task, m), None))


def cmd_modes(args) -> int:
    values = tuple(int(v) for v in args.m_grid.split(","))
    return _profile_command(args, values, "m",
                            lambda m: (TaskSpec("multisine_filter", m), None))


def cmd_degree(args) -> int:
    degrees = parse_degrees(args.k_grid)
    return _profile_command(args, degrees, "mean_degree",
                            lambda k: (TaskSpec(args.task, args.m), k))


def cmd_run(args) -> int:
    seeds = parse_seeds(args.seeds)
    task = _task_from_args(args)
    split = _split_from_args(args)
    mean_degree = args.k if args.model == ES else None
    jobs = [ExperimentJob(args.model, args.n, float(args.lam), task, seed,
                          mean_degree, ReadoutConfig(), split, args.ridge)
            for seed in seeds]
    results = parallel_map(run_experiment_job, jobs, args.workers)
    rows = [r.value for r in results if r.ok]
    failed = [r for r in results if not r.ok]
    if not rows:
        sys.stderr.write(f"all {len(jobs)} runs failed; first error:\n{failed[0].error}\n")
        return EXIT_RUNTIME
    out_dir = _run_dir(args, "run")
    write_rows_csv(rows, os.path.join(out_dir, "data.csv"))
    cfg = _base_config(args, "run", model=args.model, n=args.n, seeds=seeds,
                       task=task, split=split, ridge=args.ridge,
                       lambda_grid=(float(args.lam),))
    write_resolved(cfg, os.path.join(out_dir, "resolved.cfg"))
    for row in rows:
        print(f"model={row['model']} seed={row['seed']} lambda={row['lambda']:g} "
              f"locked={row['locked']} r_var={row['r_var']:.4f} "
              f"train={row['train_mse']:.5g} test={row['test_mse']:.5g}")
    if failed:
        sys.stderr.write(f"{len(failed)} of {len(jobs)} runs failed\n")
    return EXIT_OK


def cmd_gen_signal(args) -> int:
    if args.kind == "lorenz":
        series = lorenz_series(args.duration, args.dt, args.seed)
    elif args.kind == "mackey-glass":
        series = mackey_glass_series(args.duration, args.dt, args.seed)
    elif args.kind == "multisine":
        series = multisine_series(args.duration, args.dt, args.m, args.seed)
    else:
        raise ConfigurationError(f"unknown signal kind {args.kind!r}")
    out_dir = _run_dir(args, "gen-signal")
    path = os.path.join(out_dir, f"{args.kind}.csv")
    series.to_csv(path)
    print(f"wrote {series.n_samples} samples to {path}")
    return EXIT_OK


def cmd_reproduce_figure(args) -> int:
    seeds = parse_seeds(args.seeds) if args.seeds else None
    out_dir = _run_dir(args, f"figure{args.fig}")
    report = reproduce_figure(args.fig, args.scale, seeds, out_dir, args.workers)
    status = "PASS" if report.passed else "FAIL"
    print(f"figure {report.fig_id} ({report.scale}): {status}")
    print(f"  {report.message}")
    print(f"  data: {report.csv_path}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kuramoto-rc",
        description="Reservoir computing on networks of Kuramoto phase oscillators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeds_default="1,2,3", with_seeds=True):
        if with_seeds:
            p.add_argument("--seeds", "--seed", default=seeds_default,
                           help="comma-separated seed list")
        p.add_argument("--out", default="runs", help="output directory root")
        p.add_argument("--run-id", default=None, help="run folder name (default: timestamped)")
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes (default: cpu count)")
        p.add_argument("--config", default=None, help="INI config supplying defaults")

    def model_args(p, with_both=False):
        choices = [RS, ES] + (["both"] if with_both else [])
        p.add_argument("--model", choices=choices, default=RS if not with_both else "both")
        p.add_argument("--n", type=int, default=200, help="oscillator count")
        p.add_argument("--k", type=float, default=6.0,
                       help="mean degree of the random graph (es only)")

    def split_args(p):
        p.add_argument("--train-end", type=float, default=800.0)
        p.add_argument("--test-end", type=float, default=1000.0)
        p.add_argument("--ridge", type=float, default=0.0,
                       help="ridge penalty (0 = minimum-norm fit)")

    def task_args(p):
        p.add_argument("--task", choices=["filter", "predict"], default="filter")
        p.add_argument("--m", type=int, default=5,
                       help="filter length / prediction horizon")

    p = sub.add_parser("sweep-order", help="order parameters vs coupling strength")
    model_args(p)
    p.add_argument("--lambda", dest="lam", default="0:5:0.1",
                   help="coupling grid, start:stop:step or comma list")
    p.add_argument("--direction", choices=["forward", "backward", "both"],
                   default="forward")
    common(p)
    p.set_defaults(func=cmd_sweep_order)

    p = sub.add_parser("sweep-error", help="train/test error vs coupling strength")
    model_args(p)
    task_args(p)
    split_args(p)
    p.add_argument("--lambda", dest="lam", default="0.5:5:0.25")
    common(p)
    p.set_defaults(func=cmd_sweep_error)

    p = sub.add_parser("task-length", help="error vs task length m")
    model_args(p, with_both=True)
    p.add_argument("--task", choices=["filter", "predict"], default="filter")
    p.add_argument("--m-grid", default="5,10,15", help="comma list of task lengths")
    p.add_argument("--lambda", dest="lam", default="critical",
                   help="coupling value or 'critical'")
    split_args(p)
    common(p)
    p.set_defaults(func=cmd_task_length)

    p = sub.add_parser("modes", help="error vs input mode count (multi-sine filter)")
    model_args(p, with_both=True)
    p.add_argument("--m-grid", default="1,2,4,8", help="comma list of mode counts")
    p.add_argument("--lambda", dest="lam", default="critical")
    split_args(p)
    common(p)
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("degree", help="error vs mean degree (es)")
    p.add_argument("--model", choices=[ES], default=ES)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--k", type=float, default=6.0, help=argparse.SUPPRESS)
    p.add_argument("--k-grid", dest="k_grid", default="3:96",
                   help="mean degrees, 'a:b' doubling or comma list")
    task_args(p)
    p.add_argument("--lambda", dest="lam", default="critical")
    split_args(p)
    common(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("run", help="single experiment at a fixed coupling")
    model_args(p)
    task_args(p)
    split_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    common(p, seeds_default="1")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("gen-signal", help="emit a benchmark input signal as CSV")
    p.add_argument("--kind", choices=["lorenz", "mackey-glass", "multisine"],
                   required=True)
    p.add_argument("--duration", type=float, default=1000.0)
    p.add_argument("--dt", type=float, default=0.1)
    p.add_argument("--m", type=int, default=4, help="mode count (multisine)")
    p.add_argument("--seed", type=int, default=1)
    common(p, with_seeds=False)
    p.set_defaults(func=cmd_gen_signal)

    p = sub.add_parser("reproduce-figure", help="run a figure preset and its check")
    p.add_argument("--fig", type=int, required=True, choices=range(1, 9))
    p.add_argument("--scale", choices=["desk", "full"], default="desk")
    common(p, seeds_default="")
    p.set_defaults(func=cmd_reproduce_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ConfigurationError, InputRangeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except RuntimeError as exc:
        sys.stderr.write(f"runtime failure: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
