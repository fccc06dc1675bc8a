"""Random sensing operators: dense Gaussian, dense Bernoulli and partial DCT.

All operators are normalised so that ``(1/sqrt(m)) * Phi`` is close to an
isometry on low-complexity sets, i.e. ``(1/m) * ||Phi u||^2 ~ ||u||^2``.
The partial DCT keeps ``m`` rows of the orthonormal DCT-II matrix and scales
them by ``sqrt(n)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.fft

from .errors import DimensionError
from .seeding import rng


class OperatorKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    PARTIAL_DCT = "partial-dct"
    BERNOULLI = "bernoulli"


@dataclass(frozen=True, eq=False)
class SensingOperator:
    """A realised measurement matrix ``Phi`` of size ``m x n``.

    Dense kinds carry ``matrix``; the partial DCT carries only the sorted
    row indices and the scale ``sqrt(n)``.
    """

    kind: OperatorKind
    m: int
    n: int
    seed: int
    matrix: Optional[np.ndarray] = None
    rows: Optional[np.ndarray] = None
    scale: float = 1.0

    def apply(self, x: np.ndarray) -> np.ndarray:
        return apply(self, x)

    def apply_adjoint(self, y: np.ndarray) -> np.ndarray:
        return apply_adjoint(self, y)

    def to_dense(self) -> np.ndarray:
        """Explicit ``m x n`` matrix (closed-form rows for the partial DCT)."""
        if self.matrix is not None:
            return np.array(self.matrix)
        return self.scale * dct_rows(self.n, self.rows)


def _check_dims(m: int, n: int) -> None:
    if int(m) < 1 or int(n) < 1:
        raise DimensionError(f"operator dimensions must be positive, got m={m}, n={n}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def build_gaussian(m: int, n: int, seed: int) -> SensingOperator:
    """Dense operator with iid standard normal entries."""
    _check_dims(m, n)
    mat = rng(seed).standard_normal((int(m), int(n)))
    return SensingOperator(OperatorKind.GAUSSIAN, int(m), int(n), int(seed), matrix=_frozen(mat))


def build_bernoulli(m: int, n: int, seed: int) -> SensingOperator:
    """Dense operator with iid Rademacher (+1/-1) entries."""
    _check_dims(m, n)
    signs = rng(seed).integers(0, 2, size=(int(m), int(n)))
    mat = 2.0 * signs.astype(np.float64) - 1.0
    return SensingOperator(OperatorKind.BERNOULLI, int(m), int(n), int(seed), matrix=_frozen(mat))


def sample_rows(m: int, n: int, gen: np.random.Generator) -> np.ndarray:
    """Draw ``m`` distinct indices from ``range(n)`` by a partial Fisher-Yates shuffle.

    Returned in ascending order.
    """
    idx = np.arange(n)
    picks = gen.integers(np.arange(m), n)
    for i, j in enumerate(picks.tolist()):
        idx[i], idx[j] = idx[j], idx[i]
    return np.sort(idx[:m])


def build_partial_dct(m: int, n: int, seed: int) -> SensingOperator:
    """``sqrt(n)`` times ``m`` rows, drawn without replacement, of the orthonormal DCT-II."""
    _check_dims(m, n)
    if m > n:
        raise DimensionError(f"partial DCT needs m <= n, got m={m}, n={n}")
    rows = sample_rows(int(m), int(n), rng(seed))
    return SensingOperator(
        OperatorKind.PARTIAL_DCT, int(m), int(n), int(seed),
        rows=_frozen(rows), scale=float(np.sqrt(n)),
    )


def build_operator(kind, m: int, n: int, seed: int) -> SensingOperator:
    kind = OperatorKind(kind)
    if kind is OperatorKind.GAUSSIAN:
        return build_gaussian(m, n, seed)
    if kind is OperatorKind.BERNOULLI:
        return build_bernoulli(m, n, seed)
    return build_partial_dct(m, n, seed)


def from_matrix(matrix, seed: int = 0) -> SensingOperator:
    """Wrap an explicit matrix as a dense operator (tests, hand examples)."""
    mat = np.array(matrix, dtype=np.float64)
    if mat.ndim != 2:
        raise DimensionError("operator matrix must be 2-D")
    _check_dims(*mat.shape)
    return SensingOperator(OperatorKind.GAUSSIAN, mat.shape[0], mat.shape[1], seed, matrix=_frozen(mat))


def dct_rows(n: int, rows) -> np.ndarray:
    """Closed-form rows of the orthonormal ``n x n`` DCT-II matrix.

    ``D[k, j] = s_k * sqrt(2/n) * cos(pi * (2j + 1) * k / (2n))`` with
    ``s_0 = 1/sqrt(2)`` and ``s_k = 1`` otherwise.
    """
    k = np.asarray(rows, dtype=np.float64)[:, None]
    j = np.arange(n, dtype=np.float64)[None, :]
    d = np.sqrt(2.0 / n) * np.cos(np.pi * (2.0 * j + 1.0) * k / (2.0 * n))
    d[np.asarray(rows) == 0, :] *= 1.0 / np.sqrt(2.0)
    return d


def _vector(v, length: int, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != length:
        raise DimensionError(f"{name} must be a vector of length {length}, got shape {v.shape}")
    return v


def apply(op: SensingOperator, x) -> np.ndarray:
    """``Phi @ x``."""
    x = _vector(x, op.n, "x")
    if op.matrix is not None:
        return op.matrix @ x
    full = scipy.fft.dct(x, type=2, norm="ortho")
    return op.scale * full[op.rows]


def apply_adjoint(op: SensingOperator, y) -> np.ndarray:
    """``Phi.T @ y``."""
    y = _vector(y, op.m, "y")
    if op.matrix is not None:
        return op.matrix.T @ y
    padded = np.zeros(op.n)
    padded[op.rows] = y
    # inverse of the orthonormal DCT-II is its transpose
    return op.scale * scipy.fft.idct(padded, type=2, norm="ortho")
