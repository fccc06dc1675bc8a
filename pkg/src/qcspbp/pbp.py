"""Projected back projection (PBP).

The estimate is ``x_hat = P_K((1/m) * Phi.T @ y)``: one back projection of the
measurements followed by the exact projector onto the signal set. ``y`` may
come from any distorted observation map, quantized or not.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .models import Signal, SignalModel, _data
from .quantize import QuantizedMap
from .sensing import SensingOperator, apply_adjoint


def back_project(op: SensingOperator, y) -> np.ndarray:
    """``(1/m) * Phi.T @ y``."""
    return apply_adjoint(op, y) / op.m


def reconstruct(qmap, y, model: SignalModel) -> Signal:
    """PBP estimate of the signal observed as ``y``.

    ``qmap`` is a :class:`QuantizedMap` or a bare :class:`SensingOperator`;
    only its operator is used.
    """
    op = qmap.op if isinstance(qmap, QuantizedMap) else qmap
    if model.n != op.n:
        raise DimensionError(f"model dimension {model.n} does not match operator n={op.n}")
    return model.project(back_project(op, y))


def reconstruction_error(x, xhat) -> float:
    """Euclidean (equivalently Frobenius) distance between two signals."""
    if isinstance(x, Signal) and isinstance(xhat, Signal) and x.shape != xhat.shape:
        raise DimensionError(f"shape mismatch: {x.shape} vs {xhat.shape}")
    a, b = _data(x), _data(xhat)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def support_bound(x, xhat, a) -> tuple[float, float]:
    """Both sides of ``||x - x_hat|| <= 2 ||x - a_T||`` for sparse PBP.

    ``T`` is the union of the supports of ``x`` and ``x_hat`` and ``a_T`` is
    the back projection ``a`` restricted to ``T``.
    """
    x, xhat, a = _data(x), _data(xhat), np.asarray(a, dtype=np.float64)
    on_t = (x != 0) | (xhat != 0)
    a_t = np.where(on_t, a, 0.0)
    return float(np.linalg.norm(x - xhat)), 2.0 * float(np.linalg.norm(x - a_t))


def nearest_point_gap(x, xhat, a) -> tuple[float, float]:
    """``(||x_hat - a||, ||x - a||)``; the first never exceeds the second when ``x`` is in the model."""
    x, xhat, a = _data(x), _data(xhat), np.asarray(a, dtype=np.float64)
    return float(np.linalg.norm(xhat - a)), float(np.linalg.norm(x - a))
