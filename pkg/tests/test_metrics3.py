import numpy as np
import pytest
from fractions import Fraction
from numpy.testing import assert_allclose

from curvtool import curvature, metrics3
from curvtool.errors import (
    DegenerateWarp,
    NotGeodesicFrame,
    OutOfDomain,
    RankNotOne,
    SignChange,
    UnknownMetric,
)


def chart_point_samples(rng, chart, count=5):
    """Interior domain points for each registry chart."""
    pts = []
    while len(pts) < count:
        p = rng.uniform(0.4, 2.0, size=3) * rng.choice([-1.0, 1.0], size=3)
        if chart.name in ("power", "warped"):
            p[0] = abs(p[0])
        if chart.name == "exp_example":
            p[1] = abs(p[1])
        if chart.in_domain(p):
            pts.append(p)
    return pts


ALL_CHARTS = [
    metrics3.named_chart("euclid"),
    metrics3.named_chart("e11", {"a": 1.0}),
    metrics3.named_chart("e11", {"a": 0.7}),
    metrics3.named_chart("power", {"a": 0.0}),
    metrics3.named_chart("power", {"a": 2.0}),
    metrics3.named_chart("exp_example"),
    metrics3.named_chart("warped", {"K": 1.0, "A": 0.0, "B": 1.0}),
    metrics3.named_chart("warped", {"K": -1.0, "A": 1.0, "B": 2.0}),
]


# --- registry ----------------------------------------------------------------


def test_registry_unknown_name():
    with pytest.raises(UnknownMetric):
        metrics3.named_chart("klein_bottle")


def test_registry_milnor_has_no_chart():
    with pytest.raises(UnknownMetric):
        metrics3.named_chart("milnor")


def test_registry_parameter_validation():
    with pytest.raises(ValueError):
        metrics3.named_chart("e11")
    with pytest.raises(ValueError):
        metrics3.named_chart("power", {"a": 1.0, "b": 2.0})
    with pytest.raises(ValueError):
        metrics3.named_chart("euclid", {"a": 1.0})
    with pytest.raises(ValueError):
        metrics3.named_chart("warped", {"K": 1.0})


def test_evaluator_fd_consistency():
    # closed-form gradients/Hessians agree with central differences
    rng = np.random.default_rng(11)
    for chart in ALL_CHARTS:
        for p in chart_point_samples(rng, chart, count=4):
            assert chart.fd_consistency(p) <= 1e-6


def test_metric_values_positive_on_domain():
    rng = np.random.default_rng(12)
    for chart in ALL_CHARTS:
        for p in chart_point_samples(rng, chart, count=3):
            assert np.all(chart.metric_values(p) > 0)


def test_out_of_domain_points_rejected():
    power = metrics3.named_chart("power", {"a": 2.0})
    with pytest.raises(OutOfDomain):
        metrics3.christoffel(power, [-1.0, 0.0, 0.0])
    exp = metrics3.named_chart("exp_example")
    with pytest.raises(OutOfDomain):
        metrics3.frame_curvature(exp, [0.0, -2.0, 0.0])
    warped = metrics3.named_chart("warped", {"K": -1.0, "A": 0.0, "B": 1.0})
    with pytest.raises(OutOfDomain):
        metrics3.ricci_report(warped, [2.0, 0.0, 0.0])  # f(2) = -3


def test_point_shape_rejected():
    with pytest.raises(ValueError):
        metrics3.christoffel(metrics3.named_chart("euclid"), [1.0, 2.0])


# --- connection coefficients ---------------------------------------------------


def test_christoffel_euclid_vanishes():
    hat = metrics3.christoffel(metrics3.named_chart("euclid"), [0.3, -1.0, 2.0])
    assert_allclose(hat, np.zeros((3, 3, 3)), atol=1e-15)


def test_christoffel_e11_oracle():
    # mu2 = e^{ax}: <nabla_{e2} e2, e1> = -a, and +a for the third direction
    chart = metrics3.named_chart("e11", {"a": 1.0})
    hat = metrics3.christoffel(chart, [0.4, 1.0, -2.0])
    assert_allclose(hat[0, 1, 1], -1.0, atol=1e-12)
    assert_allclose(hat[0, 2, 2], 1.0, atol=1e-12)


def test_christoffel_power_oracles():
    hat0 = metrics3.christoffel(metrics3.named_chart("power", {"a": 0.0}), [1.0, 0.0, 0.0])
    assert_allclose(hat0[0, 1, 1], -0.5, atol=1e-12)
    assert_allclose(hat0[0, 2, 2], -0.5, atol=1e-12)
    hat2 = metrics3.christoffel(metrics3.named_chart("power", {"a": 2.0}), [1.0, 0.5, 0.5])
    assert_allclose(hat2[0, 1, 1], -1.5, atol=1e-12)
    assert_allclose(hat2[0, 2, 2], 0.5, atol=1e-12)


def test_christoffel_exp_example_oracle():
    chart = metrics3.named_chart("exp_example")
    for y in (0.5, 1.0, 2.5):
        hat = metrics3.christoffel(chart, [0.2, y, -0.7])
        assert_allclose(hat[1, 0, 0], -0.5 * np.sqrt(y) * np.exp(-y / 2), rtol=1e-12)


def test_christoffel_skew_in_first_pair():
    rng = np.random.default_rng(21)
    for chart in ALL_CHARTS:
        for p in chart_point_samples(rng, chart, count=3):
            hat = metrics3.christoffel(chart, p)
            assert np.abs(hat + hat.transpose(1, 0, 2)).max() <= 1e-10


# --- curvature ----------------------------------------------------------------


def test_frame_curvature_e11_block_values():
    # R1212 = R1313 = -a^2 and R2323 = +a^2, i.e. the reflection-twisted form
    for a in (1.0, 0.7):
        chart = metrics3.named_chart("e11", {"a": a})
        r = metrics3.frame_curvature(chart, [0.1, 0.2, 0.3])
        f = -a * a
        assert_allclose(r.components[0, 1, 0, 1], f, atol=1e-10)
        assert_allclose(r.components[0, 2, 0, 2], f, atol=1e-10)
        assert_allclose(r.components[1, 2, 1, 2], -f, atol=1e-10)
        ref = curvature.r_phi(3, -f, np.diag([-1.0, 1.0, 1.0]))
        assert_allclose(r.components, ref.components, atol=1e-10)


def test_frame_curvature_position_independent_for_e11():
    chart = metrics3.named_chart("e11", {"a": 1.0})
    rng = np.random.default_rng(31)
    base = metrics3.frame_curvature(chart, [0.0, 0.0, 0.0]).components
    for _ in range(4):
        p = rng.uniform(-2, 2, size=3)
        assert_allclose(metrics3.frame_curvature(chart, p).components, base, atol=1e-9)


def test_ricci_e11_spectrum():
    chart = metrics3.named_chart("e11", {"a": 1.0})
    rep = metrics3.ricci_report(chart, [0.3, 0.1, -0.5])
    assert_allclose(rep.eigenvalues, [-2.0, 0.0, 0.0], atol=1e-8)
    assert rep.rank == 1


def test_ricci_power_oracles():
    rep = metrics3.ricci_report(metrics3.named_chart("power", {"a": 2.0}), [1.0, 0.4, 0.9])
    assert_allclose(rep.eigenvalues[0], -1.5, atol=1e-10)
    assert_allclose(rep.eigenvalues[1:], 0.0, atol=1e-10)
    rep0 = metrics3.ricci_report(metrics3.named_chart("power", {"a": 0.0}), [2.0, 0.0, 0.0])
    assert_allclose(rep0.eigenvalues, [0.0, 0.0, 0.125], atol=1e-10)
    assert rep0.rank == 1


def test_ricci_report_exp_example_direction():
    chart = metrics3.named_chart("exp_example")
    rep = metrics3.ricci_report(chart, [1.3, 1.0, -0.2])
    assert_allclose(rep.eigenvalues[0], -0.5 * np.exp(-1.0), rtol=1e-9)
    assert rep.rank == 1
    # frame eigenvectors are orthonormal; the principal one is the first frame leg
    assert_allclose(rep.frame_directions.T @ rep.frame_directions, np.eye(3), atol=1e-12)
    direction = rep.coordinate_directions[:, 0]
    cosine = abs(direction[0]) / np.linalg.norm(direction)
    assert np.arccos(min(1.0, cosine)) < 1e-6
    assert_allclose(abs(direction[0]), np.exp(-0.5), rtol=1e-9)


def test_ricci_zero_for_euclid():
    rep = metrics3.ricci_report(metrics3.named_chart("euclid"), [1.0, 1.0, 1.0])
    assert rep.rank == 0
    assert_allclose(rep.eigenvalues, 0.0, atol=1e-14)


# --- warped products ------------------------------------------------------------


def test_warped_curvature_scale_oracle():
    wp = metrics3.WarpedProduct(1.0, 0.0, 1.0)
    for t in (0.0, 1.0, -1.0, 3.0):
        res = metrics3.warped_curvature(wp, 6, t)
        assert_allclose(res.c, 1.0 / (t * t + 1.0) ** 2, rtol=1e-14)


def test_warped_curvature_matches_twisted_form():
    rng = np.random.default_rng(41)
    for _ in range(6):
        k, a = rng.uniform(-1, 1, 2)
        b = rng.uniform(0.5, 2.0)
        wp = metrics3.WarpedProduct(k, a, b)
        t = rng.uniform(-0.3, 0.3)
        if wp.f(t) <= 0.1:
            continue
        res = metrics3.warped_curvature(wp, 6, t)
        if abs(res.c) < 1e-12:
            assert_allclose(res.tensor.components, 0.0, atol=1e-12)
            continue
        ref = curvature.r_phi(7, res.c, np.diag([-1.0] + [1.0] * 6))
        assert_allclose(res.tensor.components, ref.components, atol=1e-12)


def test_warped_curvature_flat_when_discriminant_zero():
    res = metrics3.warped_curvature(metrics3.WarpedProduct(0.0, 0.0, 2.0), 6, 1.5)
    assert res.c == 0.0
    assert_allclose(res.tensor.components, 0.0, atol=1e-15)


def test_warped_curvature_degenerate_and_dim_checks():
    wp = metrics3.WarpedProduct(-1.0, 0.0, 1.0)
    with pytest.raises(DegenerateWarp):
        metrics3.warped_curvature(wp, 6, 2.0)
    with pytest.raises(ValueError):
        metrics3.warped_curvature(wp, 1, 0.0)
    with pytest.raises(ValueError):
        metrics3.warped_curvature(wp, 8, 0.0)


def test_warped_chart_agrees_with_warped_curvature():
    # the 3-chart realization and the sectional assembly are independent routes
    wp = metrics3.WarpedProduct(1.0, 0.0, 1.0)
    chart = metrics3.named_chart("warped", {"K": 1.0, "A": 0.0, "B": 1.0})
    rng = np.random.default_rng(43)
    for _ in range(4):
        t = rng.uniform(-1.5, 1.5)
        yz = rng.uniform(-0.8, 0.8, 2)
        got = metrics3.frame_curvature(chart, [t, yz[0], yz[1]])
        want = metrics3.warped_curvature(wp, 2, t).tensor
        assert_allclose(got.components, want.components, atol=1e-8)


def test_warped_chart_is_ip():
    chart = metrics3.named_chart("warped", {"K": 1.0, "A": 0.0, "B": 1.0})
    r = metrics3.frame_curvature(chart, [1.0, 0.2, -0.4])
    assert curvature.is_ip(r, samples=100, rng_seed=5).verdict


# --- frame identity checks -------------------------------------------------------


def test_second_bianchi_residuals_small():
    rng = np.random.default_rng(51)
    charts = [
        metrics3.named_chart("e11", {"a": 1.0}),
        metrics3.named_chart("power", {"a": 0.0}),
        metrics3.named_chart("power", {"a": 2.0}),
        metrics3.named_chart("exp_example"),
    ]
    for chart in charts:
        for p in chart_point_samples(rng, chart, count=4):
            r1, r2, r3 = metrics3.second_bianchi_frame_check(chart, p)
            assert max(r1, r2, r3) <= 1e-6


def test_second_bianchi_requires_rank_one():
    with pytest.raises(RankNotOne):
        metrics3.second_bianchi_frame_check(metrics3.named_chart("euclid"), [0.0, 0.0, 0.0])


def test_h_evolution_small_on_geodesic_charts():
    rng = np.random.default_rng(52)
    charts = [
        metrics3.named_chart("e11", {"a": 1.0}),
        metrics3.named_chart("power", {"a": 0.0}),
        metrics3.named_chart("power", {"a": 2.0}),
    ]
    for chart in charts:
        for p in chart_point_samples(rng, chart, count=4):
            assert metrics3.h_evolution_check(chart, p) <= 1e-6


def test_h_evolution_rejects_non_geodesic_chart():
    chart = metrics3.named_chart("exp_example")
    with pytest.raises(NotGeodesicFrame):
        metrics3.h_evolution_check(chart, [0.5, 1.0, 0.5])


def test_h_evolution_rejects_flat_rank():
    with pytest.raises(RankNotOne):
        metrics3.h_evolution_check(metrics3.named_chart("euclid"), [0.0, 0.0, 0.0])


def test_trace_h_residual_small_including_exp():
    rng = np.random.default_rng(53)
    for name, params in (("e11", {"a": 1.0}), ("exp_example", {})):
        chart = metrics3.named_chart(name, params)
        for p in chart_point_samples(rng, chart, count=3):
            assert metrics3.trace_h_residual(chart, p) <= 1e-6


def test_closed_form_residual_small():
    rng = np.random.default_rng(54)
    charts = [
        metrics3.named_chart("e11", {"a": 1.0}),
        metrics3.named_chart("power", {"a": 0.0}),
        metrics3.named_chart("power", {"a": 2.0}),
        metrics3.named_chart("exp_example"),
    ]
    for chart in charts:
        for p in chart_point_samples(rng, chart, count=4):
            assert metrics3.closed_form_residual(chart, p) <= 1e-6


# --- phi profile -----------------------------------------------------------------


def test_phi_profile_power_is_linear():
    xs = np.linspace(0.8, 1.6, 9)
    fit = metrics3.phi_profile_check(metrics3.named_chart("power", {"a": 2.0}), xs)
    assert_allclose(fit.a, 0.0, atol=1e-9)
    assert_allclose(fit.b, 2.0 / np.sqrt(3.0), rtol=1e-9)
    assert_allclose(fit.c, 0.0, atol=1e-9)
    assert fit.max_residual <= 1e-10


def test_phi_profile_warped_is_the_warp_polynomial():
    # K = 0, A = 1, B = 2: |f|^{-1/2} = 2(x + 2) on the axis
    chart = metrics3.named_chart("warped", {"K": 0.0, "A": 1.0, "B": 2.0})
    fit = metrics3.phi_profile_check(chart, np.linspace(0.5, 2.0, 9))
    assert_allclose(fit.a, 0.0, atol=1e-9)
    assert_allclose(fit.b, 2.0, rtol=1e-9)
    assert_allclose(fit.c, 4.0, rtol=1e-9)
    assert fit.max_residual <= 1e-9


def test_phi_profile_flat_raises_sign_change():
    with pytest.raises(SignChange):
        metrics3.phi_profile_check(metrics3.named_chart("euclid"), np.linspace(0.5, 1.5, 5))
    # a = 1 makes f identically zero without the metric being flat
    with pytest.raises(SignChange):
        metrics3.phi_profile_check(
            metrics3.named_chart("power", {"a": 1.0}), np.linspace(0.5, 1.5, 5)
        )


def test_phi_profile_needs_three_samples():
    with pytest.raises(ValueError):
        metrics3.phi_profile_check(metrics3.named_chart("power", {"a": 2.0}), [1.0, 2.0])


# --- conformal flatness ------------------------------------------------------------


def test_conformal_flat_residual_separates():
    warped = metrics3.named_chart("warped", {"K": 1.0, "A": 0.0, "B": 1.0})
    assert metrics3.conformal_flat_residual(warped, [0.5, 0.3, -0.2]) <= 1e-6
    assert metrics3.conformal_flat_residual(metrics3.named_chart("euclid"), [0.0, 0.0, 0.0]) <= 1e-12
    power = metrics3.named_chart("power", {"a": 2.0})
    assert metrics3.conformal_flat_residual(power, [1.0, 0.5, 0.5]) > 1e-2


# --- Milnor frames ------------------------------------------------------------------


def test_milnor_ricci_pinned_triples():
    assert metrics3.milnor_ricci(1, 1, 2) == (0, 0, 2)
    assert metrics3.milnor_ricci(1, -1, 0) == (0, 0, -2)
    assert metrics3.milnor_ricci(1, 1, 1) == (
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
    )


def test_milnor_ricci_exact_fractions():
    out = metrics3.milnor_ricci(Fraction(1, 3), 1, -2)
    assert all(isinstance(v, Fraction) for v in out)
    # mu = (-5/6 - lam_i) with half-sum -5/6... recompute directly
    half = Fraction(1, 3) + 1 - 2
    half = half / 2
    mu = [half - Fraction(1, 3), half - 1, half + 2]
    assert out == (2 * mu[1] * mu[2], 2 * mu[0] * mu[2], 2 * mu[0] * mu[1])


def test_milnor_ricci_float_inputs_give_floats():
    out = metrics3.milnor_ricci(1.0, 1.0, 2.0)
    assert all(isinstance(v, float) for v in out)
    assert_allclose(out, (0.0, 0.0, 2.0), atol=1e-15)


def test_milnor_ricci_permutation_covariance():
    rng = np.random.default_rng(61)
    for _ in range(10):
        lams = [int(v) for v in rng.integers(-3, 4, size=3)]
        r = metrics3.milnor_ricci(*lams)
        swapped = metrics3.milnor_ricci(lams[0], lams[2], lams[1])
        assert swapped == (r[0], r[2], r[1])
