"""Explicit 3-dimensional diagonal metrics and warped products.

Charts carry exact closed-form value/gradient/Hessian evaluators for their
three diagonal components; curvature is computed symbolically from those
(finite differences enter only where a derived scalar is differentiated
along a frame direction, with one Richardson refinement).

Frame convention: e_i = g_i^{-1/2} d/dx_i. The connection coefficients are
Gamma[i, j, k] = <nabla_{e_k} e_j, e_i>, skew in (i, j); the second
fundamental form of the x = const leaves is H = (Gamma[0, i, j]) for
i, j in {2, 3}, so H = -diag(mu2'/mu2, mu3'/mu3) for diagonal charts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Optional, Union

import numpy as np

from . import curvature as curvature_mod
from . import linalg
from .curvature import CurvatureTensor
from .errors import (
    DegenerateWarp,
    NotGeodesicFrame,
    OutOfDomain,
    RankNotOne,
    SignChange,
    UnknownMetric,
)

DEFAULT_FD_STEP = 1e-5


@dataclass(frozen=True)
class ChartComponent:
    """One diagonal metric component with closed-form derivative evaluators."""

    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MetricChart:
    """Diagonal metric g = diag(g1, g2, g3) on a coordinate domain."""

    name: str
    components: tuple[ChartComponent, ChartComponent, ChartComponent]
    in_domain: Callable[[np.ndarray], bool]
    coordinates: tuple[str, str, str] = ("x", "y", "z")

    def metric_values(self, point: np.ndarray) -> np.ndarray:
        return np.array([comp.value(point) for comp in self.components])

    def fd_consistency(self, point: np.ndarray, step: float = DEFAULT_FD_STEP) -> float:
        """Max relative mismatch of the evaluators against central differences."""
        point = np.asarray(point, dtype=float)
        worst = 0.0
        for comp in self.components:
            grad = comp.gradient(point)
            hess = comp.hessian(point)
            for axis in range(3):
                plus, minus = point.copy(), point.copy()
                plus[axis] += step
                minus[axis] -= step
                fd_grad = (comp.value(plus) - comp.value(minus)) / (2 * step)
                worst = max(
                    worst, abs(fd_grad - grad[axis]) / max(1.0, abs(grad[axis]))
                )
                fd_hess = (comp.gradient(plus) - comp.gradient(minus)) / (2 * step)
                scale = np.maximum(1.0, np.abs(hess[axis]))
                worst = max(worst, float(np.abs(fd_hess - hess[axis]).max() / scale.max()))
        return worst


def _as_point(point) -> np.ndarray:
    p = np.asarray(point, dtype=float)
    if p.shape != (3,):
        raise ValueError("point must have three coordinates")
    return p


def _require_domain(chart: MetricChart, point: np.ndarray):
    if not chart.in_domain(point):
        raise OutOfDomain(
            f"point {tuple(float(c) for c in point)} outside the domain of {chart.name}"
        )


def _metric_data(chart: MetricChart, point: np.ndarray):
    g = chart.metric_values(point)
    if np.any(g <= 0):
        raise OutOfDomain(f"metric degenerate at {tuple(float(c) for c in point)}")
    dg = np.stack([comp.gradient(point) for comp in chart.components])
    return g, dg


def _coordinate_christoffel(g, dg, hg=None):
    """Coordinate symbols Gamma^a_{bc} (and their gradients when hg given)."""
    gamma = np.zeros((3, 3, 3))
    dgamma = np.zeros((3, 3, 3, 3)) if hg is not None else None
    for a in range(3):
        for b in range(3):
            val = dg[a, b] / (2 * g[a])
            gamma[a, a, b] = val
            gamma[a, b, a] = val
            if dgamma is not None:
                dval = hg[a][b] / (2 * g[a]) - dg[a, b] * dg[a] / (2 * g[a] ** 2)
                dgamma[a, a, b] = dval
                dgamma[a, b, a] = dval
    for c in range(3):
        for a in range(3):
            if c == a:
                continue
            gamma[c, a, a] = -dg[a, c] / (2 * g[c])
            if dgamma is not None:
                dgamma[c, a, a] = -hg[a][c] / (2 * g[c]) + dg[a, c] * dg[c] / (
                    2 * g[c] ** 2
                )
    return gamma, dgamma


def christoffel(chart: MetricChart, point) -> np.ndarray:
    """Frame connection coefficients Gamma[i, j, k] = <nabla_{e_k} e_j, e_i>."""
    point = _as_point(point)
    _require_domain(chart, point)
    g, dg = _metric_data(chart, point)
    gamma, _ = _coordinate_christoffel(g, dg)
    mu = np.sqrt(g)
    dmu = dg / (2 * mu[:, None])
    hat = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                num = mu[i] * gamma[i, k, j]
                if i == j:
                    num -= dmu[j, k]
                hat[i, j, k] = num / (mu[k] * mu[j])
    return hat


def frame_curvature(chart: MetricChart, point) -> CurvatureTensor:
    """Curvature tensor in the orthonormal frame e_i = g_i^{-1/2} d/dx_i."""
    point = _as_point(point)
    _require_domain(chart, point)
    g, dg = _metric_data(chart, point)
    hg = [comp.hessian(point) for comp in chart.components]
    gamma, dgamma = _coordinate_christoffel(g, dg, hg)
    # T^e_{abd} = d_a Gamma^e_{bd} - d_b Gamma^e_{ad} + Gamma^e_{af} Gamma^f_{bd}
    #           - Gamma^e_{bf} Gamma^f_{ad};  R_{abcd} = g_c T^c_{abd}.
    t = np.einsum("ebda->eabd", dgamma) - np.einsum("eadb->eabd", dgamma)
    t += np.einsum("eaf,fbd->eabd", gamma, gamma)
    t -= np.einsum("ebf,fad->eabd", gamma, gamma)
    r = np.einsum("c,cabd->abcd", g, t)
    mu = np.sqrt(g)
    scale = 1.0 / np.einsum("i,j,k,l->ijkl", mu, mu, mu, mu)
    rhat = r * scale
    rhat = (rhat - rhat.transpose(0, 1, 3, 2)) / 2.0
    rhat = (rhat + rhat.transpose(2, 3, 0, 1)) / 2.0
    return CurvatureTensor(rhat)


@dataclass(frozen=True)
class RicciReport:
    point: tuple[float, float, float]
    eigenvalues: np.ndarray
    frame_directions: np.ndarray
    coordinate_directions: np.ndarray
    rank: int


def ricci_report(chart: MetricChart, point, tol: float = 1e-8) -> RicciReport:
    """Frame Ricci spectrum with principal directions in both bases."""
    point = _as_point(point)
    rho = curvature_mod.ricci(frame_curvature(chart, point))
    w, v = linalg.sym_eigen(rho)
    scale = max(1.0, float(np.abs(w).max()))
    rank = int(np.sum(np.abs(w) > tol * scale))
    mu = np.sqrt(chart.metric_values(point))
    return RicciReport(
        point=tuple(float(c) for c in point),
        eigenvalues=w,
        frame_directions=v,
        coordinate_directions=v / mu[:, None],
        rank=rank,
    )


# --- warped products ---------------------------------------------------------


@dataclass(frozen=True)
class WarpedProduct:
    """Warping data f(t) = K t^2 + A t + B over a constant-curvature base."""

    k: float
    a: float
    b: float

    def f(self, t: float) -> float:
        return self.k * t**2 + self.a * t + self.b

    def f_prime(self, t: float) -> float:
        return 2 * self.k * t + self.a

    def in_domain(self, t: float) -> bool:
        return self.f(t) > 0

    def curvature_scale(self, t: float) -> float:
        """C(t) = (4KB - A^2) / (4 f(t)^2)."""
        ft = self.f(t)
        if ft <= 0:
            raise DegenerateWarp(f"f({t}) = {ft} is not positive")
        return (4 * self.k * self.b - self.a**2) / (4 * ft**2)


class WarpedCurvature(NamedTuple):
    tensor: CurvatureTensor
    c: float


def warped_curvature(wp: WarpedProduct, base_dim: int, t: float) -> WarpedCurvature:
    """Curvature of dt^2 + f(t) ds^2_K at time t, assembled from sectionals.

    Radial planes carry sectional curvature -C(t) and base planes +C(t);
    this equals the reflection-twisted constant-curvature tensor and the
    comparison is left to the caller as an independent route.
    """
    dim = base_dim + 1
    if not 3 <= dim <= 8:
        raise ValueError(f"total dimension {dim} outside [3, 8]")
    c = wp.curvature_scale(t)  # raises DegenerateWarp on f <= 0
    comp = np.zeros((dim,) * 4)
    for a in range(dim):
        for b in range(a + 1, dim):
            val = -c if a == 0 else c
            comp[a, b, a, b] = val
            comp[b, a, a, b] = -val
            comp[a, b, b, a] = -val
            comp[b, a, b, a] = val
    return WarpedCurvature(tensor=CurvatureTensor(comp), c=c)


# --- frame-identity checks ---------------------------------------------------


def _richardson_fd(func, point: np.ndarray, axis: int, step: float):
    def central(h):
        plus, minus = point.copy(), point.copy()
        plus[axis] += h
        minus[axis] -= h
        return (func(plus) - func(minus)) / (2 * h)

    coarse = central(step)
    fine = central(step / 2)
    return (4 * fine - coarse) / 3


def _rank_one_f(chart: MetricChart, point: np.ndarray, tol: float = 1e-6) -> float:
    """Half the (1,1) frame Ricci entry, after verifying rho = diag(2f, 0, 0)."""
    rho = curvature_mod.ricci(frame_curvature(chart, point))
    f = rho[0, 0] / 2.0
    gap = np.abs(rho - np.diag([rho[0, 0], 0.0, 0.0])).max()
    if gap > tol * max(1.0, abs(rho[0, 0])) or abs(f) <= 1e-9:
        raise RankNotOne(
            f"frame Ricci is not diag(2f, 0, 0) with f != 0 at {tuple(point)}"
        )
    return float(f)


def second_bianchi_frame_check(
    chart: MetricChart, point, fd_step: float = DEFAULT_FD_STEP
) -> tuple[float, float, float]:
    """Residuals of e_i(f)/(2f) = {Gamma 1_22 + 1_33, Gamma 2_11, Gamma 3_11}."""
    point = _as_point(point)
    _require_domain(chart, point)
    f0 = _rank_one_f(chart, point)
    hat = christoffel(chart, point)
    mu = np.sqrt(chart.metric_values(point))

    def f_at(p):
        return curvature_mod.ricci(frame_curvature(chart, p))[0, 0] / 2.0

    frame_df = [
        _richardson_fd(f_at, point, axis, fd_step) / mu[axis] for axis in range(3)
    ]
    r1 = abs(frame_df[0] / (2 * f0) - (hat[0, 1, 1] + hat[0, 2, 2]))
    r2 = abs(frame_df[1] / (2 * f0) - hat[1, 0, 0])
    r3 = abs(frame_df[2] / (2 * f0) - hat[2, 0, 0])
    return (float(r1), float(r2), float(r3))


def trace_h_residual(
    chart: MetricChart, point, fd_step: float = DEFAULT_FD_STEP
) -> float:
    """|Tr H - e_1(f)/(2f)|: the trace consequence of the frame identities."""
    return second_bianchi_frame_check(chart, point, fd_step)[0]


def h_evolution_check(
    chart: MetricChart, point, fd_step: float = DEFAULT_FD_STEP
) -> float:
    """Residual of e_1(H) = H^2 + f I_2 for geodesic-frame diagonal charts.

    The chart must have g1 = 1 and x-only transverse components at the
    evaluation point (the leaves x = const then flow along unit-speed
    geodesics); otherwise the identity is meaningless and the check raises.
    """
    point = _as_point(point)
    _require_domain(chart, point)
    g1 = chart.components[0]
    transverse_ok = all(
        abs(chart.components[i].gradient(point)[axis]) <= 1e-9
        for i in (1, 2)
        for axis in (1, 2)
    )
    if (
        abs(g1.value(point) - 1.0) > 1e-9
        or np.abs(g1.gradient(point)).max() > 1e-9
        or not transverse_ok
    ):
        raise NotGeodesicFrame(
            f"{chart.name} is not in the geodesic-frame form at "
            f"{tuple(float(c) for c in point)}"
        )
    f0 = _rank_one_f(chart, point)

    def h_at(p):
        hat = christoffel(chart, p)
        return hat[0, 1:, 1:]

    dh = _richardson_fd(h_at, point, 0, fd_step)  # e_1 = d/dx since g1 = 1
    h0 = h_at(point)
    return float(np.linalg.norm(dh - h0 @ h0 - f0 * np.eye(2)))


def closed_form_residual(
    chart: MetricChart, point, fd_step: float = DEFAULT_FD_STEP
) -> float:
    """|d/dx of sqrt(|f|) mu2 mu3|: the closed 2-form identity as a scalar."""
    point = _as_point(point)
    _require_domain(chart, point)

    def quantity(p):
        rho = curvature_mod.ricci(frame_curvature(chart, p))
        f = rho[0, 0] / 2.0
        g = chart.metric_values(p)
        return np.sqrt(abs(f) * g[1] * g[2])

    return float(abs(_richardson_fd(quantity, point, 0, fd_step)))


@dataclass(frozen=True)
class ProfileFit:
    """Least-squares quadratic a x^2 + b x + c for phi^2 = |f|^(-1/2)."""

    a: float
    b: float
    c: float
    max_residual: float


def phi_profile_check(chart: MetricChart, x_samples) -> ProfileFit:
    """Fit phi^2 over points (x, 0, 0); f must keep one sign on the samples."""
    xs = np.asarray(x_samples, dtype=float)
    if xs.size < 3:
        raise ValueError("need at least three sample abscissae")
    values = []
    for x in xs:
        point = np.array([x, 0.0, 0.0])
        _require_domain(chart, point)
        rho = curvature_mod.ricci(frame_curvature(chart, point))
        values.append(rho[0, 0] / 2.0)
    f_vals = np.array(values)
    if np.any(np.abs(f_vals) < 1e-12) or (f_vals.max() > 0 and f_vals.min() < 0):
        raise SignChange("f vanishes or changes sign on the samples")
    phi_sq = np.abs(f_vals) ** (-0.5)
    design = np.vstack([xs**2, xs, np.ones_like(xs)]).T
    coeffs, *_ = np.linalg.lstsq(design, phi_sq, rcond=None)
    residual = float(np.abs(design @ coeffs - phi_sq).max())
    return ProfileFit(
        a=float(coeffs[0]), b=float(coeffs[1]), c=float(coeffs[2]),
        max_residual=residual,
    )


def conformal_flat_residual(
    chart: MetricChart, point, fd_step: float = DEFAULT_FD_STEP
) -> float:
    """Asymmetry of T(X,Y,Z) = (nabla_X rho)(Y,Z) - (1/4)<Y,Z> X(s) in (X,Y).

    Vanishes exactly when the 3-metric is conformally flat.
    """
    point = _as_point(point)
    _require_domain(chart, point)

    def rho_at(p):
        return curvature_mod.ricci(frame_curvature(chart, p))

    rho = rho_at(point)
    hat = christoffel(chart, point)
    mu = np.sqrt(chart.metric_values(point))
    nabla = np.zeros((3, 3, 3))
    ds = np.zeros(3)
    for i in range(3):
        drho = _richardson_fd(rho_at, point, i, fd_step) / mu[i]
        ds[i] = np.trace(drho)
        nabla[i] = (
            drho
            - np.einsum("mj,mk->jk", hat[:, :, i], rho)
            - np.einsum("mk,jm->jk", hat[:, :, i], rho)
        )
    t = nabla - 0.25 * np.einsum("i,jk->ijk", ds, np.eye(3))
    return float(np.abs(t - t.transpose(1, 0, 2)).max())


# --- Milnor frames -----------------------------------------------------------

Scalar = Union[int, float, Fraction]


def milnor_ricci(lam1: Scalar, lam2: Scalar, lam3: Scalar) -> tuple:
    """Principal Ricci values of the unimodular frame with brackets lam_i.

    With mu_i = (lam1 + lam2 + lam3)/2 - lam_i the values are
    (2 mu2 mu3, 2 mu1 mu3, 2 mu1 mu2); exact over the rationals when the
    inputs are ints or Fractions.
    """
    lams = [lam1, lam2, lam3]
    if all(isinstance(v, (int, Fraction)) for v in lams):
        lams = [Fraction(v) for v in lams]
        half_sum = sum(lams) / 2
    else:
        lams = [float(v) for v in lams]
        half_sum = sum(lams) / 2.0
    mu = [half_sum - lam for lam in lams]
    return (2 * mu[1] * mu[2], 2 * mu[0] * mu[2], 2 * mu[0] * mu[1])


# --- named-metric registry ----------------------------------------------------


def _constant_component(c: float) -> ChartComponent:
    return ChartComponent(
        value=lambda p: c,
        gradient=lambda p: np.zeros(3),
        hessian=lambda p: np.zeros((3, 3)),
    )


def _x_component(value_fn, d_fn, dd_fn) -> ChartComponent:
    """Component depending on the first coordinate only."""

    def gradient(p):
        out = np.zeros(3)
        out[0] = d_fn(p[0])
        return out

    def hessian(p):
        out = np.zeros((3, 3))
        out[0, 0] = dd_fn(p[0])
        return out

    return ChartComponent(value=lambda p: value_fn(p[0]), gradient=gradient, hessian=hessian)


def _euclid_chart() -> MetricChart:
    one = _constant_component(1.0)
    return MetricChart("euclid", (one, one, one), in_domain=lambda p: True)


def _e11_chart(a: float) -> MetricChart:
    g2 = _x_component(
        lambda x: np.exp(2 * a * x),
        lambda x: 2 * a * np.exp(2 * a * x),
        lambda x: 4 * a * a * np.exp(2 * a * x),
    )
    g3 = _x_component(
        lambda x: np.exp(-2 * a * x),
        lambda x: -2 * a * np.exp(-2 * a * x),
        lambda x: 4 * a * a * np.exp(-2 * a * x),
    )
    return MetricChart(
        "e11", (_constant_component(1.0), g2, g3), in_domain=lambda p: True
    )


def _power_chart(a: float) -> MetricChart:
    g2 = _x_component(
        lambda x: x ** (1 + a),
        lambda x: (1 + a) * x**a,
        lambda x: (1 + a) * a * x ** (a - 1),
    )
    g3 = _x_component(
        lambda x: x ** (1 - a),
        lambda x: (1 - a) * x ** (-a),
        lambda x: (1 - a) * (-a) * x ** (-a - 1),
    )
    return MetricChart(
        "power", (_constant_component(1.0), g2, g3), in_domain=lambda p: p[0] > 0
    )


def _exp_chart() -> MetricChart:
    g1 = ChartComponent(
        value=lambda p: np.exp(p[1]),
        gradient=lambda p: np.array([0.0, np.exp(p[1]), 0.0]),
        hessian=lambda p: np.diag([0.0, np.exp(p[1]), 0.0]),
    )

    def g2_grad(p):
        y = p[1]
        return np.array([0.0, np.exp(y) * (y - 1) / y**2, 0.0])

    def g2_hess(p):
        y = p[1]
        return np.diag([0.0, np.exp(y) * (y * y - 2 * y + 2) / y**3, 0.0])

    g2 = ChartComponent(
        value=lambda p: np.exp(p[1]) / p[1], gradient=g2_grad, hessian=g2_hess
    )
    g3 = ChartComponent(
        value=lambda p: p[1],
        gradient=lambda p: np.array([0.0, 1.0, 0.0]),
        hessian=lambda p: np.zeros((3, 3)),
    )
    return MetricChart("exp_example", (g1, g2, g3), in_domain=lambda p: p[1] > 0)


def _warped_chart(k: float, a: float, b: float) -> MetricChart:
    wp = WarpedProduct(k, a, b)

    def w(p):
        return 1.0 + k * (p[1] ** 2 + p[2] ** 2) / 4.0

    def value(p):
        return wp.f(p[0]) / w(p) ** 2

    def gradient(p):
        ww = w(p)
        f = wp.f(p[0])
        wy, wz = k * p[1] / 2.0, k * p[2] / 2.0
        return np.array(
            [wp.f_prime(p[0]) / ww**2, -2 * f * wy / ww**3, -2 * f * wz / ww**3]
        )

    def hessian(p):
        ww = w(p)
        f = wp.f(p[0])
        fp = wp.f_prime(p[0])
        wy, wz = k * p[1] / 2.0, k * p[2] / 2.0
        wyy = wzz = k / 2.0
        h = np.empty((3, 3))
        h[0, 0] = 2 * k / ww**2
        h[0, 1] = h[1, 0] = -2 * fp * wy / ww**3
        h[0, 2] = h[2, 0] = -2 * fp * wz / ww**3
        h[1, 1] = -2 * f * wyy / ww**3 + 6 * f * wy**2 / ww**4
        h[2, 2] = -2 * f * wzz / ww**3 + 6 * f * wz**2 / ww**4
        h[1, 2] = h[2, 1] = 6 * f * wy * wz / ww**4
        return h

    transverse = ChartComponent(value=value, gradient=gradient, hessian=hessian)
    return MetricChart(
        "warped",
        (_constant_component(1.0), transverse, transverse),
        in_domain=lambda p: wp.f(p[0]) > 0
        and 1.0 + k * (p[1] ** 2 + p[2] ** 2) / 4.0 > 0,
    )


def named_chart(name: str, params: Optional[Mapping[str, float]] = None) -> MetricChart:
    """Build a registry chart; raises UnknownMetric for unknown names."""
    params = dict(params or {})

    def take(keys):
        if set(params) != set(keys):
            raise ValueError(
                f"{name} expects parameters {sorted(keys)}, got {sorted(params)}"
            )
        return [float(params[k]) for k in keys]

    if name == "euclid":
        take(())
        return _euclid_chart()
    if name == "e11":
        (a,) = take(("a",))
        return _e11_chart(a)
    if name == "power":
        (a,) = take(("a",))
        return _power_chart(a)
    if name == "exp_example":
        take(())
        return _exp_chart()
    if name == "warped":
        k, a, b = take(("K", "A", "B"))
        return _warped_chart(k, a, b)
    if name == "milnor":
        raise UnknownMetric("milnor is a Lie frame datum; only milnor_ricci applies")
    raise UnknownMetric(f"no metric named {name!r}")
