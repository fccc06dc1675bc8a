"""Low-complexity signal sets: k-sparse vectors and rank-r matrices.

Matrices are handled in vectorised form using column stacking
(Fortran order), so a rank-r ``n1 x n2`` matrix is a vector of length
``n1 * n2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .errors import DimensionError, ModelError, SVDError
from .seeding import rng


@dataclass(frozen=True, eq=False)
class Signal:
    data: np.ndarray
    shape: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.data.ndim != 1:
            raise DimensionError("signal data must be a flat vector")
        if self.shape is not None and self.shape[0] * self.shape[1] != self.data.shape[0]:
            raise DimensionError(f"shape {self.shape} does not match length {self.data.shape[0]}")

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def as_matrix(self) -> np.ndarray:
        if self.shape is None:
            raise DimensionError("vector signal has no matrix shape")
        return vec_to_mat(self.data, self.shape)

    @classmethod
    def from_matrix(cls, mat) -> "Signal":
        mat = np.asarray(mat, dtype=np.float64)
        return cls(mat_to_vec(mat), (mat.shape[0], mat.shape[1]))


def mat_to_vec(mat: np.ndarray) -> np.ndarray:
    return np.asarray(mat, dtype=np.float64).reshape(-1, order="F")


def vec_to_mat(vec: np.ndarray, shape) -> np.ndarray:
    return np.asarray(vec, dtype=np.float64).reshape(shape, order="F")


@dataclass(frozen=True)
class Sparse:
    """k-sparse vectors in R^n."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.k <= self.n:
            raise ModelError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def shape(self):
        return None

    @property
    def level(self) -> int:
        return self.k

    @property
    def name(self) -> str:
        return "sparse"

    def project(self, z) -> Signal:
        return Signal(project_sparse(_data(z), self.k))

    def generate(self, seed: int) -> Signal:
        return gen_sparse(self, seed)

    def widen(self, factor: int) -> "Sparse":
        return Sparse(self.n, min(self.n, factor * self.k))


@dataclass(frozen=True)
class LowRank:
    """``n1 x n2`` matrices of rank at most r."""

    n1: int
    n2: int
    r: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1 or not 1 <= self.r <= min(self.n1, self.n2):
            raise ModelError(f"need 1 <= r <= min(n1, n2), got {self.n1}x{self.n2}, r={self.r}")

    @property
    def n(self) -> int:
        return self.n1 * self.n2

    @property
    def shape(self):
        return (self.n1, self.n2)

    @property
    def level(self) -> int:
        return self.r

    @property
    def name(self) -> str:
        return f"lowrank:{self.n1}x{self.n2}"

    def project(self, z) -> Signal:
        return project_lowrank(Signal(_data(z), self.shape), self.r)

    def generate(self, seed: int) -> Signal:
        return gen_lowrank(self, seed)

    def widen(self, factor: int) -> "LowRank":
        return LowRank(self.n1, self.n2, min(self.n1, self.n2, factor * self.r))


SignalModel = Union[Sparse, LowRank]


def _data(z) -> np.ndarray:
    return z.data if isinstance(z, Signal) else np.asarray(z, dtype=np.float64)


def project_sparse(z, k: int) -> np.ndarray:
    """Hard thresholding: keep the ``k`` largest-magnitude entries of ``z``.

    Ties in magnitude are resolved in favour of the smaller index.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1:
        raise DimensionError("project_sparse expects a vector")
    if not 1 <= k <= z.shape[0]:
        raise ModelError(f"need 1 <= k <= n, got k={k}, n={z.shape[0]}")
    keep = np.argsort(-np.abs(z), kind="stable")[:k]
    out = np.zeros_like(z)
    out[keep] = z[keep]
    return out


def project_lowrank(z: Signal, r: int) -> Signal:
    """Best rank-``r`` approximation in Frobenius norm (truncated SVD)."""
    if z.shape is None:
        raise DimensionError("project_lowrank needs a signal with matrix shape")
    n1, n2 = z.shape
    if not 1 <= r <= min(n1, n2):
        raise ModelError(f"need 1 <= r <= min(n1, n2), got r={r} for {n1}x{n2}")
    try:
        u, s, vt = np.linalg.svd(z.as_matrix(), full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SVDError(str(exc)) from exc
    low = (u[:, :r] * s[:r]) @ vt[:r]
    return Signal(mat_to_vec(low), z.shape)


def project(model: SignalModel, z) -> Signal:
    return model.project(z)


def gen_sparse(model: Sparse, seed: int) -> Signal:
    """Unit-norm k-sparse vector with a uniformly random support and Gaussian entries."""
    gen = rng(seed)
    support = gen.choice(model.n, size=model.k, replace=False)
    x = np.zeros(model.n)
    x[support] = gen.standard_normal(model.k)
    # a zero draw has probability zero; resample rather than divide by zero
    while not np.any(x):
        x[support] = gen.standard_normal(model.k)
    return Signal(x / np.linalg.norm(x))


def gen_lowrank(model: LowRank, seed: int) -> Signal:
    """``X = c * B @ C.T`` with Gaussian factors and ``c`` giving ``||X||_F = 1``."""
    gen = rng(seed)
    for _ in range(2):
        b = gen.standard_normal((model.n1, model.r))
        c = gen.standard_normal((model.n2, model.r))
        mat = b @ c.T
        fro = np.linalg.norm(mat)
        if fro > 0:
            return Signal.from_matrix(mat / fro)
    raise ModelError("degenerate low-rank draw (zero Frobenius norm twice)")
