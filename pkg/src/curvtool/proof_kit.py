"""Operator identities satisfied by the two skew normal forms in dimension 7.

Everything here is checked on synthetic families: orthogonal conjugates of
the two block normal forms, and the explicit block solutions of the cubic
pencil. The operations return residual norms or verdicts; they do not try
to prove anything beyond the sampled instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .curvature import CurvatureTensor, r_phi
from .errors import DependentBasis, KernelMismatch

FAILS_PROPERTY = "FAILS_PROPERTY"
INCONCLUSIVE = "INCONCLUSIVE"


def rotation_block() -> np.ndarray:
    """2x2 rotation generator [[0,1],[-1,0]]."""
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_block() -> np.ndarray:
    """4x4 complex-structure block [[0, I2], [-I2, 0]]; squares to -I4."""
    j = np.zeros((4, 4))
    j[:2, 2:] = np.eye(2)
    j[2:, :2] = -np.eye(2)
    return j


@dataclass(frozen=True)
class NormalFormFamily:
    """Orthogonal conjugates of the two 7x7 skew normal forms.

    kind "a": blockdiag(symplectic_block, alpha * rotation_block, 0), with
    alpha outside {0, +1, -1}; kind "b": blockdiag(symplectic_block, 0, 0, 0).
    member() returns scale * Q N Q^t.
    """

    kind: str
    alpha: Optional[float] = None
    conjugator: Optional[np.ndarray] = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("a", "b"):
            raise ValueError("kind must be 'a' or 'b'")
        if self.kind == "a":
            if self.alpha is None:
                raise ValueError("kind 'a' requires alpha")
            if min(abs(self.alpha), abs(self.alpha - 1), abs(self.alpha + 1)) < 1e-12:
                raise ValueError("alpha must avoid {0, +1, -1}")
        elif self.alpha is not None:
            raise ValueError("kind 'b' takes no alpha")
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")
        if self.conjugator is not None:
            q = np.asarray(self.conjugator, dtype=float)
            if q.shape != (7, 7) or np.abs(q @ q.T - np.eye(7)).max() > 1e-10:
                raise ValueError("conjugator must be orthogonal 7x7")
            object.__setattr__(self, "conjugator", q)

    def _block_form(self) -> np.ndarray:
        n = np.zeros((7, 7))
        n[:4, :4] = symplectic_block()
        if self.kind == "a":
            n[4:6, 4:6] = self.alpha * rotation_block()
        return n

    def member(self) -> np.ndarray:
        n = self._block_form()
        if self.conjugator is not None:
            n = self.conjugator @ n @ self.conjugator.T
        return self.scale * n

    def kernel_basis(self) -> np.ndarray:
        """Orthonormal columns spanning Ker(member) for positive scale."""
        cols = np.eye(7)[:, 6:7] if self.kind == "a" else np.eye(7)[:, 4:7]
        if self.conjugator is not None:
            cols = self.conjugator @ cols
        return cols


def w_operator(s_mat: np.ndarray, w: float, alpha: float) -> np.ndarray:
    """Symmetric product (S^2 + w^2 I)(S^2 + alpha^2 w^2 I) for skew S."""
    s_mat = np.asarray(s_mat, dtype=float)
    eye = np.eye(s_mat.shape[0])
    sq = s_mat @ s_mat
    return (sq + w**2 * eye) @ (sq + (alpha * w) ** 2 * eye)


def g_operator(s_mat: np.ndarray, norm_y: float, b: np.ndarray) -> np.ndarray:
    """Symmetric operator S^2 + normY^2 I - b b^t.

    The vector b must span Ker(S) with ||b|| = normY; both are enforced at
    1e-9 absolute.
    """
    s_mat = np.asarray(s_mat, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.linalg.norm(s_mat @ b) > 1e-9:
        raise KernelMismatch("b is not annihilated by S")
    if abs(np.linalg.norm(b) - norm_y) > 1e-9:
        raise KernelMismatch("||b|| does not match normY")
    return s_mat @ s_mat + norm_y**2 * np.eye(s_mat.shape[0]) - np.outer(b, b)


def m_identity_residual(
    s_mat: np.ndarray, norm_y: float, b: np.ndarray, alpha: float, t: float
) -> float:
    """Frobenius residual of the quadratic identity satisfied by M = (S + t*alpha*I)G.

    The identity: M^2 - 2 alpha (1 - alpha^2) normY^2 t M
                  + alpha^2 (1 - alpha^2) normY^2 (normY^2 + t^2) G = 0.
    """
    g = g_operator(s_mat, norm_y, b)
    m = (np.asarray(s_mat, dtype=float) + t * alpha * np.eye(g.shape[0])) @ g
    lhs = (
        m @ m
        - 2.0 * alpha * (1.0 - alpha**2) * norm_y**2 * t * m
        + alpha**2 * (1.0 - alpha**2) * norm_y**2 * (norm_y**2 + t**2) * g
    )
    return float(np.linalg.norm(lhs))


def cubic_pencil_residuals(
    k: np.ndarray, l: np.ndarray, norm_z: float
) -> dict[str, float]:
    """Residual norms of the three pencil identities linking K and L.

    r1: K^2 L + L K^2 + K L K + L
    r2: L^2 K + K L^2 + L K L + normZ^2 K
    r3: L^3 + normZ^2 L
    Together with K^3 = -K these make (yK + L)^3 = -(y^2 + normZ^2)(yK + L)
    hold identically in y.
    """
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    r1 = k @ k @ l + l @ k @ k + k @ l @ k + l
    r2 = l @ l @ k + k @ l @ l + l @ k @ l + norm_z**2 * k
    r3 = l @ l @ l + norm_z**2 * l
    return {
        "r1": float(np.linalg.norm(r1)),
        "r2": float(np.linalg.norm(r2)),
        "r3": float(np.linalg.norm(r3)),
    }


def isotropy_residual(b: np.ndarray) -> float:
    """Frobenius norm of B^t J B for the 4x4 symplectic block J.

    Zero exactly when the column space is isotropic for J, which caps the
    rank of B at 2.
    """
    b = np.asarray(b, dtype=float)
    if b.shape[0] != 4:
        raise ValueError("expected a matrix with 4 rows")
    return float(np.linalg.norm(b.T @ symplectic_block() @ b))


@dataclass(frozen=True)
class TripleVerdict:
    ok: bool
    c: float


def singular_triple_check(b: np.ndarray, tol: float = 1e-9) -> TripleVerdict:
    """Check the singular values of a 4x3 matrix match the pattern (c, c, 0)."""
    sigma = linalg.singular_values(np.asarray(b, dtype=float))
    scale = max(1.0, float(sigma[0]))
    ok = abs(sigma[0] - sigma[1]) <= tol * scale and sigma[2] <= tol * scale
    return TripleVerdict(ok=bool(ok), c=float((sigma[0] + sigma[1]) / 2.0))


@dataclass(frozen=True)
class ProbeWitness:
    coefficients: tuple[float, ...]
    singular_values: tuple[float, ...]


@dataclass(frozen=True)
class ProbeReport:
    status: str
    witness: Optional[ProbeWitness] = None


def cc0_probe(
    basis: Sequence[np.ndarray],
    samples: int = 200,
    tol: float = 1e-6,
    rng_seed: linalg.RngLike = 0,
) -> ProbeReport:
    """Search a 4-dim space of 4x3 matrices for one violating the (c,c,0) pattern.

    A falsifier, not a prover: random unit coefficient vectors are tried and
    the first combination whose singular values are not (c, c, 0) is returned
    as a witness; otherwise the probe is INCONCLUSIVE.
    """
    mats = [np.asarray(m, dtype=float) for m in basis]
    if len(mats) != 4 or any(m.shape != (4, 3) for m in mats):
        raise ValueError("basis must consist of four 4x3 matrices")
    flat = np.stack([m.ravel() for m in mats])
    if linalg.numeric_rank(flat, tol=tol) < 4:
        raise DependentBasis("basis matrices are linearly dependent")
    stacked = np.vstack(mats)
    if linalg.numeric_rank(stacked, tol=tol) < 3:
        raise DependentBasis("basis matrices share a common kernel vector")
    rng = linalg.as_rng(rng_seed)
    for _ in range(samples):
        coeffs = rng.standard_normal(4)
        coeffs /= np.linalg.norm(coeffs)
        combo = sum(c * m for c, m in zip(coeffs, mats))
        verdict = singular_triple_check(combo, tol=tol)
        if not verdict.ok:
            sigma = linalg.singular_values(combo)
            return ProbeReport(
                status=FAILS_PROPERTY,
                witness=ProbeWitness(
                    coefficients=tuple(float(c) for c in coeffs),
                    singular_values=tuple(float(s) for s in sigma),
                ),
            )
    return ProbeReport(status=INCONCLUSIVE)


def split_tensor(
    r: CurvatureTensor, u: np.ndarray, alpha: float, eps: int
) -> CurvatureTensor:
    """Subtract eps times the involution-twisted constant-curvature part."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    twisted = r_phi(r.dim, alpha, u)
    return CurvatureTensor(r.components - eps * twisted.components)
