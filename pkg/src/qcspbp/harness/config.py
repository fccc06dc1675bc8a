"""Experiment configuration: dataclass, flat ``key = value`` files and presets."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigError, ModelError
from ..models import LowRank, Sparse, SignalModel
from ..seeding import MASK64
from ..sensing import OperatorKind

EXPERIMENTS = ("sparse-vs-m", "lowrank-vs-m", "nodither-vs-m", "delta-sweep", "custom")
MODELS = ("sparse", "lowrank")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep over ``m x delta x dither``, ``trials`` reconstructions per point.

    The ``m`` grid is either the explicit tuple ``m`` or ``m_points`` values
    from ``m_min`` to ``m_max`` (log-spaced when ``m_log``), rounded to
    integers and deduplicated.
    """

    experiment: str = "custom"
    name: Optional[str] = None
    matrix: str = "gaussian"
    model: str = "sparse"
    n: Optional[int] = None
    k: Optional[int] = None
    n1: Optional[int] = None
    n2: Optional[int] = None
    r: Optional[int] = None
    m: Optional[Tuple[int, ...]] = None
    m_min: Optional[int] = None
    m_max: Optional[int] = None
    m_points: Optional[int] = None
    m_log: bool = True
    deltas: Tuple[float, ...] = (1.0,)
    dither: Tuple[bool, ...] = (True,)
    trials: int = 1
    seed: int = 0
    fit_min_m: Optional[int] = None
    fixed_matrix: bool = False

    @property
    def label(self) -> str:
        return self.name or self.experiment

    def signal_model(self) -> SignalModel:
        try:
            if self.model == "sparse":
                if self.n is None or self.k is None:
                    raise ConfigError("sparse model needs n and k")
                return Sparse(int(self.n), int(self.k))
            if self.n1 is None or self.n2 is None or self.r is None:
                raise ConfigError("lowrank model needs n1, n2 and r")
            return LowRank(int(self.n1), int(self.n2), int(self.r))
        except ModelError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def ambient_dim(self) -> int:
        return self.signal_model().n

    def m_grid(self) -> Tuple[int, ...]:
        if self.m is not None:
            return tuple(sorted(set(int(v) for v in self.m)))
        if None in (self.m_min, self.m_max, self.m_points):
            raise ConfigError("give either m or all of m_min, m_max, m_points")
        if self.m_log:
            raw = np.geomspace(self.m_min, self.m_max, self.m_points)
        else:
            raw = np.linspace(self.m_min, self.m_max, self.m_points)
        return tuple(sorted(set(int(v) for v in np.rint(raw))))

    def validate(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {', '.join(EXPERIMENTS)}; got {self.experiment!r}")
        if self.model not in MODELS:
            raise ConfigError(f"model must be 'sparse' or 'lowrank'; got {self.model!r}")
        try:
            OperatorKind(self.matrix)
        except ValueError:
            kinds = ", ".join(k.value for k in OperatorKind)
            raise ConfigError(f"matrix must be one of {kinds}; got {self.matrix!r}") from None
        model = self.signal_model()
        if self.model == "lowrank" and self.n is not None and self.n != model.n:
            raise ConfigError(f"n={self.n} contradicts n1*n2={model.n}")
        if self.m_points is not None and self.m_points < 1:
            raise ConfigError("m_points must be positive")
        if self.m_min is not None and self.m_min < 1:
            raise ConfigError("m_min must be positive")
        if self.m_min is not None and self.m_max is not None and self.m_min > self.m_max:
            raise ConfigError(f"m_min={self.m_min} exceeds m_max={self.m_max}")
        grid = self.m_grid()
        if not grid:
            raise ConfigError("m grid is empty")
        if grid[0] < 1 or grid[-1] > model.n:
            raise ConfigError(f"m values must lie in [1, n={model.n}]; got {grid[0]}..{grid[-1]}")
        if not self.deltas:
            raise ConfigError("deltas must be non-empty")
        for d in self.deltas:
            if not (d > 0 and math.isfinite(d)):
                raise ConfigError(f"deltas must be positive and finite; got {d}")
        if not self.dither:
            raise ConfigError("dither must list at least one of on/off")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        return self

    def grid_points(self):
        """All ``(m, delta, dither)`` points in canonical order."""
        return [(m, float(d), bool(t)) for m in self.m_grid()
                for d in sorted(set(self.deltas)) for t in sorted(set(self.dither))]


def _sparse_m_min(n: int, k: int) -> int:
    return math.ceil(4 * k * math.log(n / k))


PRESETS = {
    "exp-a": ExperimentConfig(
        experiment="sparse-vs-m", name="exp-a", matrix="gaussian", model="sparse", n=512, k=4,
        m_min=_sparse_m_min(512, 4), m_max=512, m_points=10, deltas=(0.5, 1.0, 2.0), trials=100,
    ),
    "exp-b": ExperimentConfig(
        experiment="lowrank-vs-m", name="exp-b", matrix="partial-dct", model="lowrank",
        n1=64, n2=64, r=2, m_min=256, m_max=4096, m_points=9, deltas=(0.5, 1.0, 2.0), trials=50,
    ),
    "exp-c": ExperimentConfig(
        experiment="nodither-vs-m", name="exp-c", matrix="partial-dct", model="sparse", n=512, k=4,
        m_min=_sparse_m_min(512, 4), m_max=512, m_points=10, deltas=(0.5, 1.0, 2.0),
        dither=(False,), trials=100,
    ),
    "exp-d": ExperimentConfig(
        experiment="delta-sweep", name="exp-d", matrix="gaussian", model="lowrank",
        n1=64, n2=64, r=2, m=(2048,), deltas=tuple(2.0 ** p for p in range(-3, 6)), trials=50,
    ),
}


def preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


_BOOL = {"on": True, "off": False, "true": True, "false": False, "yes": True, "no": False,
         "1": True, "0": False}


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL[text.strip().lower()]
    except KeyError:
        raise ConfigError(f"expected on/off, got {text!r}") from None


def _list(text: str):
    return [t for t in (p.strip() for p in text.replace(";", ",").split(",")) if t]


def _parse_value(key: str, text: str):
    text = text.strip()
    if key in ("experiment", "name", "matrix", "model"):
        return text
    if text.lower() in ("", "none"):
        return None
    if key in ("n", "k", "n1", "n2", "r", "m_min", "m_max", "m_points", "trials", "seed", "fit_min_m"):
        try:
            return int(text, 0)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}") from None
    if key == "m":
        try:
            return tuple(int(t) for t in _list(text))
        except ValueError:
            raise ConfigError(f"m: expected a comma-separated list of integers, got {text!r}") from None
    if key == "deltas":
        try:
            return tuple(float(t) for t in _list(text))
        except ValueError:
            raise ConfigError(f"deltas: expected a comma-separated list of numbers, got {text!r}") from None
    if key == "dither":
        if text.lower() == "both":
            return (False, True)
        return tuple(_parse_bool(t) for t in _list(text))
    if key in ("m_log", "fixed_matrix"):
        return _parse_bool(text)
    raise ConfigError(f"unknown key {key!r}")


def parse_config(text: str, base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """Parse ``key = value`` lines (``#`` starts a comment) into a validated config.

    Keys are :class:`ExperimentConfig` field names; unknown or repeated keys
    are errors. ``preset = exp-a`` starts from a preset instead of defaults.
    """
    fields = {f.name for f in dataclasses.fields(ExperimentConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if key == "preset":
            values[key] = value
            continue
        if key not in fields:
            raise ConfigError(f"line {lineno}: unknown key {key!r}; valid keys: preset, {', '.join(sorted(fields))}")
        values[key] = _parse_value(key, value)
    cfg = base or ExperimentConfig()
    if "preset" in values:
        cfg = preset(values.pop("preset"))
    return dataclasses.replace(cfg, **values).validate()


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    cfg = parse_config(text)
    return cfg if cfg.name else dataclasses.replace(cfg, name=path.stem)
