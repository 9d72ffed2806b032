"""Reference (pure NumPy) implementations of the spectral kernels.

Single symmetric matrices go through a cyclic Jacobi sweep so both backends
share the same eigensolver where determinism matters; batched spectra use
LAPACK `eigvalsh`, which agrees with Jacobi to ~1e-13 on these n <= 8 inputs
and keeps the fallback usable for the search loops.
"""

from __future__ import annotations

import numpy as np

# Off-diagonal Frobenius threshold, relative to the input norm.
_JACOBI_TOL = 1e-13
_MAX_SWEEPS = 100


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi.

    Returns (w, v) with eigenvalues ascending and eigenvectors as columns.
    Each eigenvector's largest-magnitude entry is made positive so the output
    is reproducible across backends.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm0 = float(np.linalg.norm(a))
    thresh = _JACOBI_TOL * norm0
    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = a[q, p] = 0.0
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip, aiq = a[i, p], a[i, q]
                    a[i, p] = a[p, i] = aip - s * (aiq + tau * aip)
                    a[i, q] = a[q, i] = aiq + s * (aip - tau * aiq)
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp - s * (vq + tau * vp)
                v[:, q] = vq + s * (vp - tau * vq)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        i = int(np.argmax(np.abs(v[:, j])))
        if v[i, j] < 0.0:
            v[:, j] = -v[:, j]
    return w, v


def skew_square_spectra(batch: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of S @ S for each skew S in a (N, n, n) batch."""
    batch = np.asarray(batch, dtype=float)
    squares = batch @ batch
    return np.linalg.eigvalsh(squares)


def pair_residual(spectra: np.ndarray) -> float:
    """Sum over row pairs p < q of the euclidean distance between rows."""
    spectra = np.asarray(spectra, dtype=float)
    diff = spectra[:, None, :] - spectra[None, :, :]
    norms = np.sqrt(np.einsum("pqi,pqi->pq", diff, diff))
    iu = np.triu_indices(spectra.shape[0], 1)
    return float(norms[iu].sum())


def fd_gradient(
    cmats: np.ndarray, s0: np.ndarray, delta: float
) -> tuple[float, np.ndarray]:
    """Residual and one-sided FD gradient of the pair-spectra objective.

    cmats[p, k] is the derivative of the p-th plane operator along coordinate
    k, so the perturbed operators are s0[p] + delta * cmats[p, k]; linearity
    makes the perturbed matrices exact, only the objective is differenced.
    """
    cmats = np.asarray(cmats, dtype=float)
    s0 = np.asarray(s0, dtype=float)
    planes, ncoeff, n, _ = cmats.shape
    base = skew_square_spectra(s0)
    f0 = pair_residual(base)
    pert = s0[:, None, :, :] + delta * cmats
    spec = skew_square_spectra(pert.reshape(planes * ncoeff, n, n))
    spec = spec.reshape(planes, ncoeff, n).transpose(1, 0, 2)  # (K, P, n)
    diff = spec[:, :, None, :] - spec[:, None, :, :]
    norms = np.sqrt(np.einsum("kpqi,kpqi->kpq", diff, diff))
    iu = np.triu_indices(planes, 1)
    fk = norms[:, iu[0], iu[1]].sum(axis=1)
    grad = (fk - f0) / delta
    return f0, grad
