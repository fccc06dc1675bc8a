"""Empirical distortion estimators and sweep statistics.

RIP and (local) LPD distortions are suprema over infinite sets; here they are
estimated by Monte Carlo maxima over signals drawn from the model generators,
so every returned value is a lower bound on the true supremum. Sample ``i``
is drawn from a seed derived from ``(seed, i)`` only, which makes estimates
independent of evaluation order and monotone in the number of samples.
"""
from __future__ import annotations

import enum
import statistics
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import FitError
from .models import Signal, SignalModel, _data
from .pbp import back_project
from .quantize import QuantizedMap, observe
from .seeding import derive_seed
from .sensing import SensingOperator, apply


class DistortionKind(str, enum.Enum):
    RIP = "rip"
    LPD = "lpd"
    LOCAL_LPD = "local-lpd"


@dataclass(frozen=True)
class DistortionEstimate:
    value: float
    samples: int
    seed: int
    kind: DistortionKind


def _unit(v: np.ndarray) -> Optional[np.ndarray]:
    nrm = np.linalg.norm(v)
    return None if nrm == 0 else v / nrm


def rip_sample(model: SignalModel, seed: int, index: int) -> np.ndarray:
    """Sample ``index`` of the RIP probe set.

    Even indices are generator outputs; odd indices are normalised
    differences of two generator outputs (elements of ``K - K``).
    """
    s = derive_seed(seed, index)
    if index % 2 == 0:
        return model.generate(s).data
    p = model.generate(derive_seed(s, 0)).data
    q = model.generate(derive_seed(s, 1)).data
    d = _unit(p - q)
    return p if d is None else d


def rip_value(op: SensingOperator, u) -> float:
    u = _data(u)
    return abs(float(np.sum(apply(op, u) ** 2)) / op.m - float(u @ u))


def empirical_rip(op: SensingOperator, model: SignalModel, samples: int, seed: int,
                  extra: Iterable = ()) -> DistortionEstimate:
    """Max of ``|(1/m)||Phi u||^2 - ||u||^2|`` over sampled unit ``u`` (plus ``extra``)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    value = max(rip_value(op, rip_sample(model, seed, i)) for i in range(samples))
    for u in extra:
        u = _unit(_data(u))
        if u is not None:
            value = max(value, rip_value(op, u))
    return DistortionEstimate(value, samples, seed, DistortionKind.RIP)


def lpd_value(qmap: QuantizedMap, u, v) -> float:
    """``(1/m) |<A(u), Phi v> - <Phi u, Phi v>|`` for the map's fixed dither."""
    u, v = _data(u), _data(v)
    phi_v = apply(qmap.op, v)
    dev = observe(qmap, u) - apply(qmap.op, u)
    return abs(float(dev @ phi_v)) / qmap.m


def lpd_pair(model: SignalModel, seed: int, index: int) -> Tuple[np.ndarray, np.ndarray]:
    s = derive_seed(seed, index)
    return model.generate(derive_seed(s, 0)).data, model.generate(derive_seed(s, 1)).data


def empirical_lpd(qmap: QuantizedMap, model: SignalModel, pairs: int, seed: int) -> DistortionEstimate:
    """Max of the LPD deviation over ``pairs`` sampled unit-norm model pairs ``(u, v)``."""
    if pairs < 1:
        raise ValueError("pairs must be positive")
    value = max(lpd_value(qmap, *lpd_pair(model, seed, i)) for i in range(pairs))
    return DistortionEstimate(value, pairs, seed, DistortionKind.LPD)


def empirical_local_lpd(qmap: QuantizedMap, u, model: SignalModel, directions: int, seed: int,
                        extra=None) -> DistortionEstimate:
    """Local LPD at a fixed ``u``: max over ``v = u``, sampled ``v`` and an optional extra direction.

    Sampled directions reuse the ``v`` half of :func:`empirical_lpd` pairs at
    the same seed.
    """
    u = _data(u)
    if np.linalg.norm(u) > 1 + 1e-12:
        raise ValueError("u must lie in the unit ball")
    if directions < 1:
        raise ValueError("directions must be positive")
    value = lpd_value(qmap, u, u)
    for i in range(directions):
        v = model.generate(derive_seed(derive_seed(seed, i), 1)).data
        value = max(value, lpd_value(qmap, u, v))
    if extra is not None:
        w = _unit(_data(extra))
        if w is not None:
            value = max(value, lpd_value(qmap, u, w))
    return DistortionEstimate(value, directions, seed, DistortionKind.LOCAL_LPD)


class BoundCheck(NamedTuple):
    error: float
    bound: float
    rip: float
    lpd: float

    @property
    def holds(self) -> bool:
        return self.error <= self.bound * (1 + 1e-9) + 1e-12


def error_bound_check(qmap: QuantizedMap, x, xhat, y, model: SignalModel,
                      samples: int, seed: int) -> BoundCheck:
    """Compare ``||x - x_hat||`` with ``4 eps + 2 nu`` built from sampled distortions.

    Both estimates include the directions the error bound actually uses:
    ``w = (x - a_T) / ||x - a_T||`` for the local LPD at ``x`` and the
    normalised ``x +/- w`` for the RIP, so the comparison cannot fail for
    sparse models except by rounding.
    """
    x, xhat = _data(x), _data(xhat)
    a = back_project(qmap.op, y)
    on_t = (x != 0) | (xhat != 0)
    w = _unit(x - np.where(on_t, a, 0.0))
    extra_rip = [] if w is None else [x + w, x - w]
    eps = empirical_rip(qmap.op, model, samples, seed, extra=extra_rip).value
    nu = empirical_local_lpd(qmap, x, model, samples, seed, extra=w).value
    return BoundCheck(float(np.linalg.norm(x - xhat)), 4 * eps + 2 * nu, eps, nu)


class DecayFit(NamedTuple):
    exponent: float
    intercept: float
    residual: float


def fit_decay_exponent(ms: Sequence[float], errors: Sequence[float]) -> DecayFit:
    """Least-squares line through ``(log m, log error)``.

    ``intercept`` is in natural-log units and ``residual`` is the RMS of the
    fit residuals.
    """
    ms = np.asarray(ms, dtype=np.float64)
    errors = np.asarray(errors, dtype=np.float64)
    if ms.shape != errors.shape or ms.ndim != 1 or ms.size < 2:
        raise FitError("need two equal-length sequences with at least two points")
    if np.any(ms <= 0) or np.any(errors <= 0):
        raise FitError("power-law fit needs strictly positive values")
    lx, ly = np.log(ms), np.log(errors)
    if np.all(lx == lx[0]):
        raise FitError("all abscissae are equal")
    design = np.column_stack([lx, np.ones_like(lx)])
    (slope, icpt), *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - (slope * lx + icpt)
    return DecayFit(float(slope), float(icpt), float(np.sqrt(np.mean(resid ** 2))))


class PointStats(NamedTuple):
    mean: float
    median: float
    std: float
    count: int


GridPoint = Tuple[int, float, bool]


@dataclass
class SweepResult:
    """Per-point error statistics and power-law fits for one experiment.

    ``fits`` maps ``(delta, dither)`` to the fit of mean error against ``m``
    over points with ``m >= fit_min_m``. When the sweep has a single ``m``,
    ``delta_fits`` maps ``(m, dither)`` to the fit of mean error against
    ``1 + delta``. Standard deviations use the sample (n - 1) convention.
    """

    experiment: str
    grid: List[GridPoint]
    stats: Dict[GridPoint, PointStats]
    fits: Dict[Tuple[float, bool], DecayFit] = field(default_factory=dict)
    delta_fits: Dict[Tuple[int, bool], DecayFit] = field(default_factory=dict)
    fit_min_m: Optional[int] = None
    checks: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def ms(self) -> List[int]:
        return sorted({p[0] for p in self.grid})

    @property
    def deltas(self) -> List[float]:
        return sorted({p[1] for p in self.grid})

    def series(self, delta: float, dither: bool = True) -> Tuple[List[int], List[float]]:
        pts = [p for p in self.grid if p[1] == delta and p[2] == dither]
        return [p[0] for p in pts], [self.stats[p].mean for p in pts]

    def fit(self, delta: float, dither: bool = True) -> DecayFit:
        return self.fits[(delta, dither)]

    def mean(self, m: int, delta: float, dither: bool = True) -> float:
        return self.stats[(m, delta, dither)].mean


def point_stats(errors: Sequence[float]) -> PointStats:
    errors = sorted(errors)
    std = statistics.stdev(errors) if len(errors) > 1 else 0.0
    return PointStats(float(np.mean(errors)), float(statistics.median(errors)), float(std), len(errors))


def aggregate_trials(records: Sequence, fit_min_m: Optional[int] = None) -> SweepResult:
    """Group trial records by ``(m, delta, dither)`` and fit decay exponents.

    Records need ``experiment``, ``m``, ``delta``, ``dither``, ``trial`` and
    ``error`` attributes. Optional boolean ``checks`` mappings on records are
    tallied as ``(checked, violations)``.
    """
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    ordered = sorted(records, key=lambda r: (r.m, r.delta, r.dither, r.trial))
    groups: Dict[GridPoint, List[float]] = defaultdict(list)
    checks: Dict[str, List[int]] = {}
    for rec in ordered:
        groups[(int(rec.m), float(rec.delta), bool(rec.dither))].append(rec.error)
        for name, ok in sorted(getattr(rec, "checks", {}).items()):
            tally = checks.setdefault(name, [0, 0])
            tally[0] += 1
            tally[1] += 0 if ok else 1
    grid = sorted(groups)
    stats = {p: point_stats(groups[p]) for p in grid}
    result = SweepResult(
        experiment=ordered[0].experiment, grid=grid, stats=stats, fit_min_m=fit_min_m,
        checks={k: (v[0], v[1]) for k, v in sorted(checks.items())},
    )
    for delta, dither in sorted({(p[1], p[2]) for p in grid}):
        ms, means = result.series(delta, dither)
        sel = [(m, e) for m, e in zip(ms, means) if fit_min_m is None or m >= fit_min_m]
        if len({m for m, _ in sel}) >= 2 and all(e > 0 for _, e in sel):
            result.fits[(delta, dither)] = fit_decay_exponent(*zip(*sel))
    if len(result.ms) == 1:
        m = result.ms[0]
        for dither in sorted({p[2] for p in grid}):
            pts = [p for p in grid if p[2] == dither]
            if len(pts) >= 2 and all(stats[p].mean > 0 for p in pts):
                result.delta_fits[(m, dither)] = fit_decay_exponent(
                    [1 + p[1] for p in pts], [stats[p].mean for p in pts])
    return result
