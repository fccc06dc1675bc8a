"""Uniform scalar quantization with optional uniform dithering.

The observation map is ``A(x) = Q(Phi x + xi)`` with ``Q(t) = delta * floor(t / delta)``
applied componentwise and ``xi`` drawn iid uniform on ``[0, delta)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, ResolutionError
from .seeding import rng
from .sensing import SensingOperator, apply


class DitherMode(str, enum.Enum):
    NONE = "none"
    UNIFORM = "uniform"


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not delta > 0 or not math.isfinite(delta):
        raise ResolutionError(f"quantizer resolution must be positive and finite, got {delta}")
    return delta


def quantize(t, delta: float):
    """``delta * floor(t / delta)``, scalar or elementwise on arrays."""
    delta = _check_delta(delta)
    out = delta * np.floor(np.asarray(t, dtype=np.float64) / delta)
    return float(out) if out.ndim == 0 else out


quantize_scalar = quantize


def dithered_mean_exact(t, delta) -> Fraction:
    """Exact ``E[Q(t + xi)]`` for ``xi ~ U([0, delta))``, on rational inputs.

    With ``lam = t / delta`` the integrand ``floor(lam + d)`` equals
    ``floor(lam)`` on ``[0, 1 - frac(lam))`` and ``floor(lam) + 1`` on the
    rest of ``[0, 1)``; integrating the two pieces gives the expectation.
    """
    t, delta = Fraction(t), Fraction(delta)
    if delta <= 0:
        raise ResolutionError("delta must be positive")
    lam = t / delta
    base = math.floor(lam)
    frac = lam - base
    return delta * (base * (1 - frac) + (base + 1) * frac)


def draw_dither(m: int, delta: float, seed: int) -> np.ndarray:
    """``m`` iid draws from ``U([0, delta))``."""
    delta = _check_delta(delta)
    if int(m) < 1:
        raise DimensionError(f"dither length must be positive, got {m}")
    xi = delta * rng(seed).random(int(m))
    # delta * u can round up to delta for u just below 1
    return np.where(xi < delta, xi, np.nextafter(delta, 0.0))


@dataclass(frozen=True, eq=False)
class QuantizedMap:
    """``x -> Q(Phi x + xi)`` for a fixed operator and dither realisation."""

    op: SensingOperator
    delta: float
    mode: DitherMode
    dither: np.ndarray
    dither_seed: int = 0

    def __post_init__(self):
        _check_delta(self.delta)
        if self.dither.shape != (self.op.m,):
            raise DimensionError(f"dither must have length m={self.op.m}")
        if self.mode is DitherMode.NONE and np.any(self.dither != 0):
            raise ValueError("dither must be zero when mode is NONE")

    @property
    def m(self) -> int:
        return self.op.m

    @property
    def n(self) -> int:
        return self.op.n

    def observe(self, x) -> np.ndarray:
        return observe(self, x)

    def observe_linear(self, x) -> np.ndarray:
        return observe_linear(self, x)


def make_map(op: SensingOperator, delta: float, dithered: bool = True, seed: int = 0) -> QuantizedMap:
    """Build a quantized map, drawing a fresh dither from ``seed`` when enabled."""
    delta = _check_delta(delta)
    if dithered:
        xi = draw_dither(op.m, delta, seed)
        mode = DitherMode.UNIFORM
    else:
        xi = np.zeros(op.m)
        mode = DitherMode.NONE
    xi.setflags(write=False)
    return QuantizedMap(op, delta, mode, xi, int(seed))


def observe(qmap: QuantizedMap, x) -> np.ndarray:
    """Quantized measurements ``Q(Phi x + xi)``; they lie on ``delta * Z^m``."""
    return quantize(apply(qmap.op, x) + qmap.dither, qmap.delta)


def observe_linear(qmap: QuantizedMap, x) -> np.ndarray:
    """Unquantized, undithered measurements ``Phi x``."""
    return apply(qmap.op, x)
