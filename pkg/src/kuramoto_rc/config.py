"""Flat INI-style run configuration with full-resolution write-back.

Every run writes its fully resolved configuration (defaults filled in,
seeds recorded) next to its outputs so results can be reproduced from the
archive alone.
"""

from __future__ import annotations

import configparser
import logging
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .experiments import ES, RS
from .pipeline import Split
from .readout import ReadoutConfig
from .tasks import DEFAULT_COEFFS, TaskSpec

logger = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a sweep or single run."""

    model: str = RS
    n: int = 200
    mean_degree: float = 6.0
    topology: str = "auto"          # auto | complete | er
    lambda_grid: tuple = tuple(round(0.5 + 0.25 * k, 10) for k in range(19))
    task: TaskSpec = TaskSpec("filter", 5)
    readout: ReadoutConfig = ReadoutConfig()
    split: Split = Split(800.0, 1000.0)
    seeds: tuple = (1, 2, 3)
    ridge: float = 0.0
    rcond: float = 1e-6
    dt: float = 0.01
    var_c: float = 1e5
    transient: float = 50.0
    window: float = 50.0
    workers: int | None = None
    out: str = "runs"
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in (RS, ES):
            raise ConfigurationError(f"model must be rs or es, got {self.model!r}")
        if self.topology not in ("auto", "complete", "er"):
            raise ConfigurationError(f"unknown topology {self.topology!r}")
        natural = "complete" if self.model == RS else "er"
        if self.topology != "auto" and self.topology != natural:
            logger.warning("model %s normally runs on a %s graph; %s was forced",
                           self.model, natural, self.topology)

    @property
    def effective_topology(self) -> str:
        if self.topology != "auto":
            return self.topology
        return "complete" if self.model == RS else "er"


def to_ini(cfg: ExperimentConfig) -> str:
    cp = configparser.ConfigParser()
    cp["experiment"] = {
        "model": cfg.model,
        "n": str(cfg.n),
        "seeds": ",".join(str(s) for s in cfg.seeds),
        "out": cfg.out,
        "workers": "" if cfg.workers is None else str(cfg.workers),
    }
    cp["topology"] = {
        "kind": cfg.topology,
        "mean_degree": repr(cfg.mean_degree),
    }
    cp["dynamics"] = {"dt": repr(cfg.dt)}
    cp["sweep"] = {
        "lambda_grid": ",".join(repr(v) for v in cfg.lambda_grid),
        "transient": repr(cfg.transient),
        "window": repr(cfg.window),
        "var_c": repr(cfg.var_c),
    }
    cp["task"] = {
        "kind": cfg.task.kind,
        "m": str(cfg.task.m),
        "coeffs": ",".join(repr(v) for v in cfg.task.coeffs),
    }
    cp["readout"] = {
        "s": str(cfg.readout.s),
        "delta_t": repr(cfg.readout.delta_t),
        "include_input_nodes": str(cfg.readout.include_input_nodes),
        "ridge": repr(cfg.ridge),
        "rcond": repr(cfg.rcond),
    }
    cp["split"] = {
        "train_end": repr(cfg.split.train_end),
        "test_end": repr(cfg.split.test_end),
    }
    if cfg.extras:
        cp["extras"] = {k: str(v) for k, v in cfg.extras.items()}
    lines: list[str] = []
    for section in cp.sections():
        lines.append(f"[{section}]")
        for key, value in cp[section].items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)


def from_ini(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser()
    cp.read_string(text)
    try:
        exp = cp["experiment"]
        topo = cp["topology"]
        dyn = cp["dynamics"]
        swp = cp["sweep"]
        tsk = cp["task"]
        rd = cp["readout"]
        spl = cp["split"]
    except KeyError as exc:
        raise ConfigurationError(f"missing config section: {exc}") from exc
    workers = exp.get("workers", "")
    extras = dict(cp["extras"]) if cp.has_section("extras") else {}
    return ExperimentConfig(
        model=exp.get("model", RS),
        n=exp.getint("n", 200),
        mean_degree=float(topo.get("mean_degree", "6.0")),
        topology=topo.get("kind", "auto"),
        lambda_grid=tuple(float(v) for v in swp.get("lambda_grid").split(",")),
        task=TaskSpec(tsk.get("kind", "filter"), int(tsk.get("m", "5")),
                      tuple(float(v) for v in tsk.get("coeffs", "1.0,0.5,0.25").split(","))),
        readout=ReadoutConfig(int(rd.get("s", "10")), float(rd.get("delta_t", "0.1")),
                              rd.getboolean("include_input_nodes", False)),
        split=Split(float(spl.get("train_end", "800")), float(spl.get("test_end", "1000"))),
        seeds=tuple(int(s) for s in exp.get("seeds", "1,2,3").split(",")),
        ridge=float(rd.get("ridge", "0.0")),
        rcond=float(rd.get("rcond", "1e-6")),
        dt=float(dyn.get("dt", "0.01")),
        var_c=float(swp.get("var_c", "1e5")),
        transient=float(swp.get("transient", "50.0")),
        window=float(swp.get("window", "50.0")),
        workers=None if not workers else int(workers),
        out=exp.get("out", "runs"),
        extras=extras,
    )


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return from_ini(fh.read())


def write_resolved(cfg: ExperimentConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_ini(cfg))
