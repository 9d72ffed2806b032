"""End-to-end acceptance battery: one test per advertised guarantee.

Every test checks a shipped behaviour at its stated tolerance and prints a
single "[criterion N] PASS" line on success; the timing-capped tests measure
wall clock around the whole body.  All randomness is drawn from seeded
generators so the battery is reproducible bit for bit.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from curvtool import (
    curvature,
    linalg,
    metrics3,
    normed_maps,
    proof_kit,
    quotient_ring,
    search,
)


def random_orthogonal(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def conjugated_kind_a(count, rng):
    """Conjugated kind-"a" members cycling the alpha/scale grid."""
    combos = [(a, s) for a in (1.5, 2.0, 3.0) for s in (0.5, 1.0, 2.0)]
    for i in range(count):
        alpha, scale = combos[i % len(combos)]
        fam = proof_kit.NormalFormFamily(
            "a", alpha=alpha, conjugator=random_orthogonal(7, rng), scale=scale
        )
        yield alpha, scale, fam


def test_criterion_01_reflection_tensor_is_ip():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    u = rng.normal(size=7)
    u /= np.linalg.norm(u)
    phi = np.eye(7) - 2.0 * np.outer(u, u)
    r = curvature.r_phi(7, 1.0, phi)

    lams = []
    for _ in range(500):
        plane = linalg.random_orthonormal_pair(7, rng)
        s = curvature.eigenvalue_structure(
            curvature.plane_operator(r, plane), tol=1e-9
        )
        assert s.kernel_dim == 5
        assert s.multiplicities() == (2,)
        lams.append(s.pairs[0][0])
    spread = max(lams) - min(lams)
    assert spread < 1e-9
    assert_allclose(lams, 1.0, atol=1e-9)

    report = curvature.is_ip(r, samples=500, tol=1e-9, rng_seed=rng)
    assert report.verdict
    assert report.structure.kernel_dim == 5
    assert report.structure.multiplicities() == (2,)
    assert abs(report.structure.pairs[0][0] - 1.0) <= 1e-9
    assert report.rank == 2

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    print(f"[criterion 1] PASS spread={spread:.2e} elapsed={elapsed:.2f}s")


def test_criterion_02_normal_form_structures():
    rng = np.random.default_rng(202)
    for _ in range(100):
        q = random_orthogonal(7, rng)

        fam_a = proof_kit.NormalFormFamily("a", alpha=2.0, conjugator=q)
        s = curvature.eigenvalue_structure(fam_a.member(), tol=1e-9)
        assert s.kernel_dim == 1
        assert s.multiplicities() == (2, 4)
        assert abs(s.pairs[0][0] - 2.0) <= 1e-9
        assert abs(s.pairs[1][0] - 1.0) <= 1e-9

        fam_b = proof_kit.NormalFormFamily("b", conjugator=q)
        s = curvature.eigenvalue_structure(fam_b.member(), tol=1e-9)
        assert s.kernel_dim == 3
        assert s.multiplicities() == (4,)
        assert abs(s.pairs[0][0] - 1.0) <= 1e-9
    print("[criterion 2] PASS 100 conjugations per kind")


def test_criterion_03_w_operator_rank_one():
    rng = np.random.default_rng(303)
    worst = 0.0
    for alpha, scale, fam in conjugated_kind_a(100, rng):
        w = proof_kit.w_operator(fam.member(), scale, alpha)
        assert linalg.numeric_rank(w) == 1
        expected = alpha**2 * scale**4
        # symmetric rank one: the nonzero eigenvalue is the trace
        rel = abs(float(np.trace(w)) - expected) / expected
        assert rel <= 1e-8
        worst = max(worst, rel)
    print(f"[criterion 3] PASS 100 members, worst rel err {worst:.2e}")


def test_criterion_04_quadratic_identity_and_minors():
    rng = np.random.default_rng(404)
    worst = 0.0
    for alpha, scale, fam in conjugated_kind_a(100, rng):
        b = scale * fam.kernel_basis()[:, 0]
        for t in (-1.0, 0.0, 0.7, 2.0):
            res = proof_kit.m_identity_residual(fam.member(), scale, b, alpha, t)
            assert res <= 1e-8
            worst = max(worst, res)

    # Degree-one matrix family whose minors split as g = 0, f = |Y|^2 h:
    # scaled rotation-style matrices over one variable.
    MultiPoly = quotient_ring.MultiPoly
    QuotElem = quotient_ring.QuotElem
    for c in (Fraction(1), Fraction(3), Fraction(-1, 2)):
        tbar_c = QuotElem(MultiPoly(1, {}), MultiPoly(1, {(0,): c}))
        y1_c = QuotElem(MultiPoly(1, {(1,): c}), MultiPoly(1, {}))
        neg_y1_c = QuotElem(MultiPoly(1, {(1,): -c}), MultiPoly(1, {}))
        report = quotient_ring.minor_divisibility_check(
            [[tbar_c, y1_c], [neg_y1_c, tbar_c]]
        )
        assert report.ok

    # Rank-one products of degree-<=1 elements are always divisible.
    def small_poly(m):
        terms = {}
        for _ in range(3):
            exp = [0] * m
            for _ in range(int(rng.integers(0, 2))):
                exp[int(rng.integers(0, m))] += 1
            terms[tuple(exp)] = Fraction(int(rng.integers(-3, 4)))
        return MultiPoly(m, terms)

    for _ in range(25):
        left = [QuotElem(small_poly(3), small_poly(3)) for _ in range(3)]
        right = [QuotElem(small_poly(3), small_poly(3)) for _ in range(3)]
        entries = [[quotient_ring.mul(a, b) for b in right] for a in left]
        assert quotient_ring.minor_divisibility_check(entries).ok

    for m in (1, 6):
        tbar = QuotElem.tbar(m)
        zero = QuotElem.zero(m)
        report = quotient_ring.minor_divisibility_check([[tbar, zero], [zero, tbar]])
        assert not report.ok
        assert report.failing_minor == (0, 1, 0, 1)
    print(f"[criterion 4] PASS identity residual <= {worst:.2e}, minors exact")


def test_criterion_05_cubic_pencil_and_dimension_probe():
    start = time.perf_counter()
    j2 = proof_kit.rotation_block()
    worst = 0.0
    radii = (0.4, 0.7, 1.0, 1.6, 2.3)
    angles = np.linspace(0.3, 2 * np.pi, 5, endpoint=False)
    for radius in radii:
        for theta in angles:
            a, b = radius * np.cos(theta), radius * np.sin(theta)
            k = np.zeros((7, 7))
            k[:4, :4] = proof_kit.symplectic_block()
            l = np.zeros((7, 7))
            l[:2, :2] = a * j2
            l[:2, 2:4] = b * j2
            l[2:4, :2] = b * j2
            l[2:4, 2:4] = -a * j2
            residuals = proof_kit.cubic_pencil_residuals(k, l, radius)
            worst = max(worst, max(residuals.values()))
            assert max(residuals.values()) <= 1e-12

    rng = np.random.default_rng(505)
    found = 0
    for _ in range(1000):
        basis = [rng.standard_normal((4, 3)) for _ in range(4)]
        probe = proof_kit.cc0_probe(basis, samples=200, tol=1e-6, rng_seed=rng)
        if probe.status == proof_kit.FAILS_PROPERTY:
            assert probe.witness is not None
            found += 1
    assert found == 1000

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(
        f"[criterion 5] PASS pencil residual <= {worst:.2e}, "
        f"probe 1000/1000, elapsed={elapsed:.2f}s"
    )


def test_criterion_06_orthogonal_map_construction():
    rng = np.random.default_rng(606)
    bmap = normed_maps.BilinearMap7.octonion_table()
    x_rand = rng.normal(size=7)
    x_rand /= np.linalg.norm(x_rand)
    for x0 in (np.eye(7)[0], x_rand):
        u = normed_maps.build_u(bmap, x0)
        assert np.abs(u.T @ u - np.eye(7)).max() <= 1e-9
        worst = 0.0
        for _ in range(500):
            x = rng.normal(size=7)
            y = rng.normal(size=7)
            pairing = abs(float((u @ x) @ bmap(x, y)))
            worst = max(worst, pairing / (np.linalg.norm(x) * np.linalg.norm(y)))
        assert worst <= 1e-9

    for _ in range(100):
        x = rng.normal(size=7)
        x /= np.linalg.norm(x)
        assert normed_maps.kx_dimension(bmap, x) == 6
    print("[criterion 6] PASS orthogonality, pairing, and image dimension")


def test_criterion_07_closed_form_spectra():
    rep = metrics3.ricci_report(metrics3.named_chart("e11", {"a": 1}), (0.3, -0.2, 0.5))
    assert_allclose(np.sort(rep.eigenvalues), [-2.0, 0.0, 0.0], atol=1e-8)

    rep = metrics3.ricci_report(metrics3.named_chart("power", {"a": 2}), (1.0, 0.0, 0.0))
    assert abs(rep.eigenvalues[0] + 1.5) <= 1e-8

    rep = metrics3.ricci_report(metrics3.named_chart("exp_example"), (0.4, 1.0, -0.8))
    assert abs(rep.eigenvalues[0] + 0.5 * np.exp(-1.0)) <= 1e-8
    assert np.abs(rep.eigenvalues[1:]).max() <= 1e-8
    direction = rep.coordinate_directions[:, 0]
    assert abs(abs(direction[0]) - np.exp(-0.5)) <= 1e-8
    angle = np.arctan2(np.linalg.norm(direction[1:]), abs(direction[0]))
    assert angle < 1e-6
    print(f"[criterion 7] PASS closed forms, direction angle {angle:.2e} rad")


def test_criterion_08_warped_product_curvature():
    wp = metrics3.WarpedProduct(1.0, 0.0, 1.0)
    phi = np.diag([-1.0, 1.0, 1.0])
    for t in (0.0, 1.0, -1.0, 3.0):
        wc = metrics3.warped_curvature(wp, 2, t)
        c_t = 1.0 / (t**2 + 1.0) ** 2
        assert abs(wc.c - c_t) <= 1e-12
        expected = curvature.r_phi(3, c_t, phi)
        assert_allclose(wc.tensor.components, expected.components, atol=1e-8)
        report = curvature.is_ip(wc.tensor, samples=200, rng_seed=8)
        assert report.verdict

    chart = metrics3.named_chart("warped", {"K": 1, "A": 0, "B": 1})
    worst = 0.0
    for t in (0.0, 1.0, -1.0, 3.0):
        res = metrics3.conformal_flat_residual(chart, (t, 0.3, -0.7))
        worst = max(worst, res)
        assert res <= 1e-4
    power2 = metrics3.named_chart("power", {"a": 2})
    res = metrics3.conformal_flat_residual(power2, (1.0, 0.2, -0.4))
    assert res > 1e-2
    print(f"[criterion 8] PASS warped match, flat residual <= {worst:.2e}")


def test_criterion_09_frame_identities():
    rng = np.random.default_rng(909)

    def generic(r):
        return float(r.uniform(-1.0, 1.0))

    charts = [
        ("e11", {"a": 1}, lambda r: (generic(r), generic(r), generic(r)), True),
        ("power", {"a": 0}, lambda r: (r.uniform(0.4, 2.5), generic(r), generic(r)), True),
        ("power", {"a": 2}, lambda r: (r.uniform(0.4, 2.5), generic(r), generic(r)), True),
        ("exp_example", {}, lambda r: (generic(r), r.uniform(0.5, 2.0), generic(r)), False),
    ]
    worst = 0.0
    for name, params, sample, geodesic_frame in charts:
        chart = metrics3.named_chart(name, params)
        for _ in range(20):
            point = sample(rng)
            residuals = metrics3.second_bianchi_frame_check(chart, point)
            assert max(residuals) <= 1e-5
            worst = max(worst, max(residuals))
            res = metrics3.trace_h_residual(chart, point)
            assert res <= 1e-5
            worst = max(worst, res)
            res = metrics3.closed_form_residual(chart, point)
            assert res <= 1e-5
            worst = max(worst, res)
            if geodesic_frame:
                res = metrics3.h_evolution_check(chart, point)
                assert res <= 1e-5
                worst = max(worst, res)
            else:
                # not a unit-speed transverse foliation: the evolution
                # identity does not apply and the check must refuse
                with pytest.raises(metrics3.NotGeodesicFrame):
                    metrics3.h_evolution_check(chart, point)
    print(f"[criterion 9] PASS 20 points x 4 charts, worst residual {worst:.2e}")


def test_criterion_10_unimodular_frame_ricci():
    rng = np.random.default_rng(1010)
    checked = 0
    while checked < 20:
        lam1 = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        lam2 = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        if lam1 == 0 or lam2 == 0:
            continue
        values = metrics3.milnor_ricci(lam1, lam2, lam1 + lam2)
        nonzero = [v for v in values if v != 0]
        assert len(nonzero) == 1
        assert nonzero[0] == 2 * lam1 * lam2
        checked += 1
    print("[criterion 10] PASS 20 exact rational frames")


def test_criterion_11_search_corroborates_rank_bound():
    start = time.perf_counter()
    cfg = search.SearchConfig()
    assert (cfg.dim, cfg.seeds, cfg.iterations) == (7, 50, 2000)
    out = search.run_search(cfg)
    assert len(out.candidates) == 50

    below = [c for c in out.candidates if c.residual < cfg.tol_residual]
    for cand in below:
        assert cand.max_rank <= 2

    if out.summary.counterexample_seeds:
        witnesses = [
            curvature.tensor_to_text(c.tensor)
            for c in out.candidates
            if c.seed_index in out.summary.counterexample_seeds
        ]
        pytest.fail(
            "candidate below tolerance with plane rank > 2:\n" + "\n".join(witnesses)
        )

    elapsed = time.perf_counter() - start
    assert elapsed < 600.0
    best = min(c.residual for c in out.candidates)
    print(
        f"[criterion 11] PASS best residual {best:.2e}, "
        f"{len(below)} below tol, elapsed={elapsed:.1f}s"
    )


def test_criterion_12_quotient_ring_contract():
    MultiPoly = quotient_ring.MultiPoly
    QuotElem = quotient_ring.QuotElem
    rng = np.random.default_rng(1212)
    m = 6
    tbar = QuotElem.tbar(m)
    norm_sq = MultiPoly.norm_squared(m)
    assert quotient_ring.mul(tbar, tbar) == QuotElem(-norm_sq, MultiPoly(m, {}))

    def random_poly():
        terms = {}
        for _ in range(3):
            exp = [0] * m
            for _ in range(int(rng.integers(0, 5))):
                exp[int(rng.integers(0, m))] += 1
            coeff = Fraction(int(rng.integers(-4, 5)))
            if coeff:
                terms[tuple(exp)] = terms.get(tuple(exp), Fraction(0)) + coeff
        return MultiPoly(m, terms)

    def random_elem():
        return QuotElem(random_poly(), random_poly())

    valuations = 0
    for _ in range(500):
        a, b, c = random_elem(), random_elem(), random_elem()
        assert quotient_ring.mul(a, b) == quotient_ring.mul(b, a)
        assert quotient_ring.mul(quotient_ring.mul(a, b), c) == quotient_ring.mul(
            a, quotient_ring.mul(b, c)
        )
        assert quotient_ring.mul(a, b + c) == quotient_ring.mul(
            a, b
        ) + quotient_ring.mul(a, c)

        # tbar-divide round-trip on a known multiple
        product = quotient_ring.mul(tbar, a)
        peeled = quotient_ring.tbar_divide(product)
        assert peeled is not None
        assert quotient_ring.mul(tbar, peeled) == product

        # valuation agrees with peel-and-remultiply
        u = a + QuotElem.one(m) + tbar
        if u.is_zero() or quotient_ring.tbar_valuation(u) != 0:
            continue
        k = int(rng.integers(0, 4))
        e = u
        for _ in range(k):
            e = quotient_ring.mul(tbar, e)
        assert quotient_ring.tbar_valuation(e) == k
        back = e
        for _ in range(k):
            back = quotient_ring.tbar_divide(back)
        for _ in range(k):
            back = quotient_ring.mul(tbar, back)
        assert back == e
        valuations += 1
    assert valuations > 400
    print(f"[criterion 12] PASS 500 triples, {valuations} valuation checks")
