"""Deterministic dense linear algebra for matrices of size at most 8.

Vectors and matrices are plain float64 ndarrays. The symmetric eigensolver is
cyclic Jacobi (shared with the compiled kernels) so spectra are reproducible
across runs and backends; singular values go through LAPACK's SVD.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import _kernels
from .errors import NotSymmetric

DEFAULT_TOL = 1e-8

RngLike = Union[int, np.random.Generator]


def as_rng(rng_seed: RngLike) -> np.random.Generator:
    """Accept either a seed or a ready Generator."""
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns, eigenvectors[:, i] <-> eigenvalues[i]


@dataclass(frozen=True)
class OrientedPlane:
    """Ordered orthonormal pair spanning an oriented 2-plane."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        gram_defect = max(
            abs(x @ x - 1.0), abs(y @ y - 1.0), abs(float(x @ y))
        )
        if gram_defect > 1e-10:
            raise ValueError(f"pair is not orthonormal (defect {gram_defect:.3e})")

    @property
    def dim(self) -> int:
        return self.x.shape[0]


def sym_eigen(m: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    """Jacobi eigen-decomposition of a symmetric matrix, eigenvalues ascending.

    Raises NotSymmetric when the symmetry defect exceeds tol * ||m||.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetric("input must be a square matrix")
    defect = np.linalg.norm(m - m.T)
    if defect > tol * np.linalg.norm(m):
        raise NotSymmetric(f"symmetry defect {defect:.3e} exceeds tolerance")
    sym = 0.5 * (m + m.T)
    w, v = _kernels.jacobi_eigh(sym)
    return Spectrum(np.asarray(w), np.asarray(v))


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values, descending and nonnegative."""
    m = np.asarray(m, dtype=float)
    return np.linalg.svd(m, compute_uv=False)


def numeric_rank(m: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Count of singular values above tol * max(1, largest singular value)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sigma = singular_values(m)
    if sigma.size == 0:
        return 0
    cutoff = tol * max(1.0, float(sigma[0]))
    return int(np.count_nonzero(sigma > cutoff))


def random_orthonormal_pair(dim: int, rng_seed: RngLike = 0) -> OrientedPlane:
    """Haar-uniform oriented orthonormal pair via Gaussian sampling + Gram-Schmidt."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    rng = as_rng(rng_seed)
    while True:
        g = rng.standard_normal((2, dim))
        nx = np.linalg.norm(g[0])
        if nx < 1e-12:
            continue
        x = g[0] / nx
        y = g[1] - (g[1] @ x) * x
        ny = np.linalg.norm(y)
        if ny < 1e-12:
            continue
        return OrientedPlane(x, y / ny)
