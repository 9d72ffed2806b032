"""Algebraic curvature tensors and their skew-operator spectra.

Conventions fixed here and anchored by tests: the pairing is
R(X,Y,Z,W) = <R(X,Y)W, Z>, the constant-curvature model acts as
R(X,Y)Z = C(<Y,Z>X - <X,Z>Y), and the Ricci trace is chosen so the
constant-curvature tensor in dimension n has Ricci (n-1)C * I.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import (
    BadInvolution,
    DegeneratePlane,
    DimMismatch,
    InvalidCurvatureTensor,
    NotSkew,
    OddMultiplicity,
    ParseError,
)
from .linalg import OrientedPlane

SYMMETRY_TOL = 1e-12
MIN_DIM = 3
MAX_DIM = 8


@dataclass(frozen=True)
class CurvatureTensor:
    """Dense (0,4) tensor with the curvature symmetries, dims 3..8."""

    components: np.ndarray

    def __post_init__(self):
        comp = np.asarray(self.components, dtype=float)
        if comp.ndim != 4 or len(set(comp.shape)) != 1:
            raise InvalidCurvatureTensor("components must be a dim^4 array")
        dim = comp.shape[0]
        if not MIN_DIM <= dim <= MAX_DIM:
            raise InvalidCurvatureTensor(f"dim {dim} outside [{MIN_DIM}, {MAX_DIM}]")
        if not np.all(np.isfinite(comp)):
            raise InvalidCurvatureTensor("components must be finite")
        object.__setattr__(self, "components", comp)
        residuals = symmetry_residuals(comp)
        worst = max(residuals.values())
        if worst > SYMMETRY_TOL:
            raise InvalidCurvatureTensor(
                f"curvature symmetries violated (max residual {worst:.3e}): {residuals}"
            )

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


@dataclass(frozen=True)
class EigenStructure:
    """Kernel dimension plus (lambda, even multiplicity) pairs of a skew operator.

    Pairs are sorted by multiplicity, then by lambda.
    """

    kernel_dim: int
    pairs: tuple[tuple[float, int], ...]

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.pairs)

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.pairs)


@dataclass(frozen=True)
class IPReport:
    verdict: bool
    structure: Optional[EigenStructure]
    rank: Optional[int]
    samples: int
    mismatch: Optional[tuple[EigenStructure, EigenStructure]] = None


def symmetry_residuals(comp: np.ndarray) -> dict[str, float]:
    """Max-abs defects of the three curvature symmetries of a raw array."""
    antisym = max(
        float(np.abs(comp + comp.transpose(1, 0, 2, 3)).max()),
        float(np.abs(comp + comp.transpose(0, 1, 3, 2)).max()),
    )
    pair_sym = float(np.abs(comp - comp.transpose(2, 3, 0, 1)).max())
    bianchi = float(
        np.abs(comp + comp.transpose(1, 2, 0, 3) + comp.transpose(2, 0, 1, 3)).max()
    )
    return {"antisym": antisym, "pair_sym": pair_sym, "first_bianchi": bianchi}


def bianchi_residuals(r: CurvatureTensor | np.ndarray) -> dict[str, float]:
    comp = r.components if isinstance(r, CurvatureTensor) else np.asarray(r, float)
    return symmetry_residuals(comp)


def constant_curvature(dim: int, c: float) -> CurvatureTensor:
    """Constant-curvature model: R_{ijkl} = C (d_ik d_jl - d_il d_jk)."""
    if not MIN_DIM <= dim <= MAX_DIM:
        raise InvalidCurvatureTensor(f"dim {dim} outside [{MIN_DIM}, {MAX_DIM}]")
    eye = np.eye(dim)
    comp = c * (np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye))
    return CurvatureTensor(comp)


def r_phi(dim: int, c: float, phi: np.ndarray) -> CurvatureTensor:
    """Constant-curvature tensor twisted by an orthogonal involution phi.

    Components are C (phi_ik phi_jl - phi_il phi_jk); phi must be orthogonal
    with phi^2 = id within 1e-10, and the scale C must be nonzero.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (dim, dim):
        raise BadInvolution(f"phi must be {dim}x{dim}")
    if np.abs(phi @ phi.T - np.eye(dim)).max() > 1e-10:
        raise BadInvolution("phi is not orthogonal")
    if np.abs(phi @ phi - np.eye(dim)).max() > 1e-10:
        raise BadInvolution("phi is not an involution")
    if c == 0:
        raise BadInvolution("scale C must be nonzero")
    comp = c * (
        np.einsum("ik,jl->ijkl", phi, phi) - np.einsum("il,jk->ijkl", phi, phi)
    )
    return CurvatureTensor(comp)


def curvature_operator(r: CurvatureTensor, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Skew matrix M with M[k, l] = <R(X,Y) e_k, e_l>."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (r.dim,) or y.shape != (r.dim,):
        raise DimMismatch(f"vectors must have dim {r.dim}")
    return np.einsum("ijkl,i,j->lk", r.components, x, y)


def wedge_norm(x: np.ndarray, y: np.ndarray) -> float:
    """Area of the parallelogram spanned by x and y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimMismatch("vectors must have equal dim")
    val = (x @ x) * (y @ y) - (x @ y) ** 2
    return float(np.sqrt(max(val, 0.0)))


def plane_operator(r: CurvatureTensor, plane: OrientedPlane) -> np.ndarray:
    """Normalized operator of the oriented plane: R(X,Y) / ||X ^ Y||."""
    w = wedge_norm(plane.x, plane.y)
    if w < 1e-10:
        raise DegeneratePlane("spanning pair is (numerically) collinear")
    return curvature_operator(r, plane.x, plane.y) / w


def eigenvalue_structure(m: np.ndarray, tol: float = 1e-9) -> EigenStructure:
    """Classify a skew operator by the spectrum of its symmetric square.

    Eigenvalues of M^2 lie on the -lambda^2 half line; they are grouped with a
    relative gap threshold and each negative group must have even size.
    """
    m = np.asarray(m, dtype=float)
    skew_defect = float(np.abs(m + m.T).max())
    if skew_defect > tol * max(1.0, float(np.abs(m).max())):
        raise NotSkew(f"skew defect {skew_defect:.3e} exceeds tolerance")
    w, _ = linalg.sym_eigen(m @ m, tol=1e-6)
    thresh = tol * max(1.0, float(-w[0]))
    groups: list[list[float]] = [[float(w[0])]]
    for val in w[1:]:
        if float(val) - groups[-1][-1] <= thresh:
            groups[-1].append(float(val))
        else:
            groups.append([float(val)])
    kernel_dim = 0
    pairs = []
    for grp in groups:
        mean = sum(grp) / len(grp)
        if abs(mean) <= thresh:
            kernel_dim += len(grp)
            continue
        if len(grp) % 2 != 0:
            raise OddMultiplicity(
                f"group near {mean:.6g} has odd size {len(grp)}; tolerance too tight"
            )
        pairs.append((float(np.sqrt(-mean)), len(grp)))
    pairs.sort(key=lambda item: (item[1], item[0]))
    return EigenStructure(kernel_dim, tuple(pairs))


def _structures_match(a: EigenStructure, b: EigenStructure, tol: float) -> bool:
    if a.kernel_dim != b.kernel_dim or a.multiplicities() != b.multiplicities():
        return False
    lam_scale = max([1.0] + [lam for lam, _ in a.pairs])
    return all(
        abs(la - lb) <= tol * lam_scale for (la, _), (lb, _) in zip(a.pairs, b.pairs)
    )


def is_ip(
    r: CurvatureTensor,
    samples: int = 200,
    tol: float = 1e-9,
    rng_seed: linalg.RngLike = 0,
) -> IPReport:
    """Sampling verdict: do all sampled planes share one eigenvalue structure?"""
    if samples < 2:
        raise ValueError("samples must be at least 2")
    rng = linalg.as_rng(rng_seed)
    reference: Optional[EigenStructure] = None
    for _ in range(samples):
        plane = linalg.random_orthonormal_pair(r.dim, rng)
        structure = eigenvalue_structure(plane_operator(r, plane), tol)
        if reference is None:
            reference = structure
        elif not _structures_match(reference, structure, tol):
            return IPReport(
                verdict=False,
                structure=None,
                rank=None,
                samples=samples,
                mismatch=(reference, structure),
            )
    assert reference is not None
    return IPReport(
        verdict=True,
        structure=reference,
        rank=r.dim - reference.kernel_dim,
        samples=samples,
    )


def ricci(r: CurvatureTensor) -> np.ndarray:
    """Ricci matrix rho_{jl} = sum_i R_{ijil} (symmetric)."""
    return np.einsum("ijil->jl", r.components)


# --- tensor text format (consumed by the CLI) --------------------------------
#
# Line 1: "dim N"; then one component per line as "i j k l value" with 0-based
# indices. Omitted components are filled through the symmetry orbit; entries
# that disagree with an already-implied value are rejected.

def _orbit(i: int, j: int, k: int, l: int, value: float):
    half = [
        ((i, j, k, l), value),
        ((j, i, k, l), -value),
        ((i, j, l, k), -value),
        ((j, i, l, k), value),
    ]
    return half + [((c, d, a, b), v) for (a, b, c, d), v in half]


def tensor_from_text(text: str) -> CurvatureTensor:
    comp = None
    dim = None
    seen: dict[tuple[int, int, int, int], tuple[float, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if dim is None:
            if len(fields) != 2 or fields[0] != "dim":
                raise ParseError(f"line {lineno}: expected 'dim N' header")
            try:
                dim = int(fields[1])
            except ValueError:
                raise ParseError(f"line {lineno}: dim is not an integer") from None
            if not MIN_DIM <= dim <= MAX_DIM:
                raise ParseError(f"line {lineno}: dim {dim} outside [3, 8]")
            comp = np.zeros((dim,) * 4)
            continue
        if len(fields) != 5:
            raise ParseError(f"line {lineno}: expected 'i j k l value'")
        try:
            idx = tuple(int(f) for f in fields[:4])
            value = float(fields[4])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed indices or value") from None
        if not all(0 <= t < dim for t in idx):
            raise ParseError(f"line {lineno}: index out of range for dim {dim}")
        for slot, v in _orbit(*idx, value):
            if slot in seen:
                prev, prev_line = seen[slot]
                if abs(prev - v) > 1e-12 * max(1.0, abs(prev), abs(v)):
                    raise ParseError(
                        f"line {lineno}: component {slot} conflicts with line {prev_line}"
                    )
            else:
                seen[slot] = (v, lineno)
                comp[slot] = v
    if dim is None:
        raise ParseError("empty tensor document (missing 'dim N' header)")
    try:
        return CurvatureTensor(comp)
    except InvalidCurvatureTensor as exc:
        raise ParseError(f"components do not form a curvature tensor: {exc}") from exc


def tensor_to_text(r: CurvatureTensor) -> str:
    """Canonical listing: one line per nonzero orbit representative."""
    lines = [f"dim {r.dim}"]
    comp = r.components
    for i in range(r.dim):
        for j in range(i + 1, r.dim):
            for k in range(r.dim):
                for l in range(k + 1, r.dim):
                    if (i, j) > (k, l):
                        continue
                    v = float(comp[i, j, k, l])
                    if v != 0.0:
                        lines.append(f"{i} {j} {k} {l} {v!r}")
    return "\n".join(lines) + "\n"
