"""Norm-preserving bilinear maps on R^7 and the derived orthogonal operator.

The concrete model is the octonion cross product, pinned to one fixed
multiplication table; every result below is convention-independent and is
asserted through norm identities rather than through the table itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import KernelNotOneDim

# Index triples (1-based) with e_p e_q = e_r cyclically, +1 sign.
_FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))

_NORM_CHECK_SAMPLES = 32


@dataclass(frozen=True)
class BilinearMap7:
    """Bilinear B: R^7 x R^7 -> R^7 with ||B(X,Y)|| = ||X ^ Y||.

    Stored as structure constants table[i, j, k] = <B(e_i, e_j), e_k>.
    Construction validates skewness exactly and the norm identity on a
    seeded random sweep.
    """

    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=float)
        if table.shape != (7, 7, 7):
            raise ValueError("structure constants must form a (7,7,7) array")
        object.__setattr__(self, "table", table)
        if np.abs(table + table.transpose(1, 0, 2)).max() > 1e-13:
            raise ValueError("structure constants must be skew in the first two slots")
        rng = np.random.default_rng(0)
        for _ in range(_NORM_CHECK_SAMPLES):
            x, y = rng.standard_normal((2, 7))
            x /= np.linalg.norm(x)
            y /= np.linalg.norm(y)
            gap = np.sum(self(x, y) ** 2) - (1.0 - (x @ y) ** 2)
            if abs(gap) > 1e-12:
                raise ValueError(f"norm identity violated by {gap:.3e}")

    @classmethod
    def octonion_table(cls) -> "BilinearMap7":
        return _octonion_map()

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.table, x, y)


@lru_cache(maxsize=1)
def _octonion_map() -> BilinearMap7:
    table = np.zeros((7, 7, 7))
    for p, q, r in _FANO_TRIPLES:
        i, j, k = p - 1, q - 1, r - 1
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            table[a, b, c] = 1.0
            table[b, a, c] = -1.0
    return BilinearMap7(table)


@dataclass(frozen=True)
class ExtendedMap:
    """Extension into R^8: first slot <X,Y>, remaining slots B(X,Y).

    Satisfies ||result||^2 = ||X||^2 ||Y||^2 exactly when the base map
    satisfies its norm identity.
    """

    base: BilinearMap7

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.empty(8)
        out[0] = float(np.dot(x, y))
        out[1:] = self.base(x, y)
        return out


def octonion_cross(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Imaginary part of the octonion product of two imaginary octonions."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (7,) or y.shape != (7,):
        raise ValueError("octonion_cross expects 7-vectors")
    return _octonion_map()(x, y)


def a_operator(bmap: BilinearMap7, x: np.ndarray) -> np.ndarray:
    """7x8 matrix A with <A Z, Y> = <extended map of (X, Y), Z>."""
    x = np.asarray(x, dtype=float)
    a = np.empty((7, 8))
    a[:, 0] = x
    a[:, 1:] = np.einsum("iyc,i->yc", bmap.table, x)
    return a


def kernel_direction(a: np.ndarray) -> np.ndarray:
    """Unit spanning vector of Ker(a) for a 7x8 matrix with 1-dim kernel.

    The kernel always contains the eighth right-singular direction (rank is
    at most 7); it is one-dimensional exactly when all seven computed
    singular values stay away from zero. Gate: second-smallest singular
    value must exceed 1e-6 (the smallest, structurally zero, sits below
    1e-9 for free).
    """
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    if s[6] <= 1e-6:
        raise KernelNotOneDim(f"second-smallest singular value {s[6]:.3e} <= 1e-6")
    z0 = vt[7]
    pivot = int(np.argmax(np.abs(z0)))
    if z0[pivot] < 0:
        z0 = -z0
    return z0


def build_u(bmap: BilinearMap7, x0: np.ndarray) -> np.ndarray:
    """Orthogonal 7x7 operator U with UX orthogonal to span{B(X, .)}.

    Built from the kernel direction Z0 of A at the unit base point X0:
    column k is the last seven slots of <e_k, X0> Z0 - A0^t A_{e_k} Z0.
    """
    x0 = np.asarray(x0, dtype=float)
    if abs(np.linalg.norm(x0) - 1.0) > 1e-9:
        raise ValueError("base point X0 must be a unit vector")
    a0 = a_operator(bmap, x0)
    z0 = kernel_direction(a0)
    u = np.empty((7, 7))
    for k in range(7):
        ek = np.zeros(7)
        ek[k] = 1.0
        v = x0[k] * z0 - a0.T @ (a_operator(bmap, ek) @ z0)
        u[:, k] = v[1:]
    return u


def kx_dimension(bmap: BilinearMap7, x: np.ndarray) -> int:
    """Dimension of span{B(X, Y) : Y in R^7} for nonzero X."""
    x = np.asarray(x, dtype=float)
    m = np.einsum("iyc,i->cy", bmap.table, x)
    return linalg.numeric_rank(m)
