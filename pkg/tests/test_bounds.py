import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenclose import bounds
from eigenclose.bounds import (FixedNorms, Measure, ProblemParams, Sharpening, TheoremId,
                               applicable_theorems, certify, sharpen, sharpening_factor)
from eigenclose.kernels import LambdaPolar, green3d_norm, heat_bound_norm, symbol_norm
from eigenclose.specfun import babenko_factor, beta_fn, gamma_fn

INF = math.inf


def rel(a, b):
    return abs(a - b) / abs(b)


def admissible_ids(params):
    return {tid for tid, ok, _ in applicable_theorems(params) if ok}


class TestRes1:
    @pytest.mark.parametrize("theta", [0.3, 1.0, math.pi / 2, 2.5, math.pi, 5.0])
    def test_sin_half_theta_constant(self, theta):
        # a = b = |q|^(1/2): ||a||_4 ||b||_4 = ||q||_2, so |lambda| <= ||q||_2^4 / (64 pi^2 sin^2)
        q2 = 1.7
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 4.0, 4.0, theta=theta), q2 ** 0.5, q2 ** 0.5)
        expected = q2 ** 4 / (64 * math.pi ** 2 * math.sin(theta / 2) ** 2)
        assert cert.admissible
        assert rel(cert.radius, expected) < 1e-10
        assert rel(cert.constant ** 2, 1 / (64 * math.pi ** 2 * math.sin(theta / 2) ** 2)) < 1e-10

    def test_r6_theta_pi(self):
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 6.0, 6.0, theta=math.pi), 1.0, 1.0)
        assert cert.exponent == pytest.approx(0.75, rel=1e-15)
        closed = (4 * math.pi) ** -0.5 * gamma_fn(1.5).value * 1.5 ** -1.5
        assert rel(cert.constant, closed) < 1e-13
        quad = green3d_norm(1.5, LambdaPolar(1.0, math.pi)).quadrature ** 1.5
        assert rel(cert.constant, quad) < 1e-8

    @pytest.mark.parametrize("theta", [0.4, 2.0, 4.4])
    @pytest.mark.parametrize("alpha", [1.2, 2.0, 2.6])
    def test_constant_is_green_norm_power(self, alpha, theta):
        quad = green3d_norm(alpha, LambdaPolar(1.0, theta)).quadrature ** alpha
        assert rel(bounds.res1_constant(alpha, theta), quad) < 1e-8

    def test_boundary_excluded(self):
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 3.0, 3.0, theta=1.0), 1, 1)
        assert not cert.admissible
        assert any("2/3" in v or "0.666667" in v for v in cert.violated_conditions)

    def test_missing_theta(self):
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 4.0, 4.0), 1, 1)
        assert not cert.admissible
        assert any("theta" in v for v in cert.violated_conditions)


class TestCor3d:
    def test_corq1_matches_cor1(self):
        g, mom = 0.8, 2.3
        r = 2 * g + 3
        p = ProblemParams(3, 2.0, r, r, theta=2.0, gamma_moment=g)
        qn = mom ** (1 / (g + 1.5))
        a = bounds.certify_corq1(p, mom)
        b = bounds.certify_cor1(p, qn ** 0.5, qn ** 0.5)
        assert rel(a.radius, b.radius) < 1e-12

    def test_corq2_weight(self):
        from eigenclose.potentials import PotentialSpec, lp_norm

        w = PotentialSpec.radial(3, lambda r: (1 + r * r) ** -1.0).q
        quad = lp_norm(w, 4.0).value ** 4
        assert rel(2 * math.pi * beta_fn(1.5, 2.5).value, quad) < 1e-8
        assert rel(bounds.weight_norm_power(3, 2.0, 4.0), quad) < 1e-8

    def test_r3_p2_inadmissible(self):
        p = ProblemParams(3, 2.0, 3.0, 3.0, theta=1.0)
        assert not bounds.certify_cor1(p, 1, 1).admissible
        assert not bounds.certify_cor_3d(p, FixedNorms()).admissible

    def test_dispatch(self):
        norms = FixedNorms(1.1, 0.9, moments={2.5: 1.3}, weighted={(2.0, 4.0): 0.7})
        base = ProblemParams(3, 2.0, 4.0, 4.0, theta=1.0)
        assert bounds.certify_cor_3d(base, norms).theorem_id is TheoremId.COR1
        assert bounds.certify_cor_3d(base.replace(gamma_moment=1.0), norms).theorem_id is TheoremId.CORQ1
        assert bounds.certify_cor_3d(base.replace(tau=2.0), norms).theorem_id is TheoremId.CORQ2

    @pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
    def test_corq1_scaling(self, c):
        g, mom = 1.3, 0.9
        p = ProblemParams(3, 2.0, 2 * g + 3, 2 * g + 3, theta=2.2, gamma_moment=g)
        base = bounds.certify_corq1(p, mom).radius
        # int |c q|^(g+3/2) = c^(g+3/2) int |q|^(g+3/2)
        scaled = bounds.certify_corq1(p, c ** (g + 1.5) * mom).radius
        assert rel(scaled, c ** ((g + 1.5) / g) * base) < 1e-12


class TestRes2:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
    def test_example_constant(self, n):
        p = ProblemParams(n, 2.0, 2.0 * n, 2.0 * n)
        cert = bounds.certify_res2(p, 1.0, 1.0)
        assert cert.exponent == pytest.approx(0.5, rel=1e-14)
        assert rel(cert.constant ** 2, 0.25 * (1 - 1 / n) ** (n - 1)) < 1e-10

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
    def test_example_sharpened(self, n):
        p = ProblemParams(n, 2.0, 2.0 * n, 2.0 * n)
        kind, factor, _ = sharpening_factor(TheoremId.RES2, p)
        assert kind is Sharpening.BECKNER_YOUNG
        assert rel(factor, (2 / math.sqrt(n)) * (n / (n + 1)) ** ((n + 1) / 2)) < 1e-12
        direct = (babenko_factor(n / (n - 1)) * babenko_factor(2 * n / (n + 1)) ** 2) ** n
        assert rel(factor, direct) < 1e-12
        cert = sharpen(bounds.certify_res2(p, 1.0, 1.0), p)
        assert rel(cert.constant ** 2, n * (n - 1) ** (n - 1) / (n + 1) ** (n + 1)) < 1e-10

    def test_r8_heat_quadrature(self):
        p = ProblemParams(3, 2.0, 8.0, 8.0)
        cert = bounds.certify_res2(p, 1.0, 1.0)
        quad = heat_bound_norm(3, p.alpha_conv, -1.0).quadrature
        assert rel(cert.constant, quad) < 1e-8

    def test_boundary_excluded(self):
        # 1/r + 1/s = 2/n exactly
        assert not bounds.certify_res2(ProblemParams(4, 2.0, 4.0, 4.0), 1, 1).admissible

    def test_corres22_only_left_half_plane(self):
        p = ProblemParams(3, 2.0, 5.0, 5.0, theta=1.0, gamma_moment=1.0)
        assert not bounds.certify_corres22(p, 1.0).admissible


class TestRes3:
    @pytest.mark.parametrize("n,g", [(3, 0.5), (3, 2.0), (4, 1.0), (5, 0.75)])
    def test_corim1_constant(self, n, g):
        mom = 1.9
        r = 2 * g + n
        qn = mom ** (1 / (g + n / 2))
        res3 = bounds.certify_res3(ProblemParams(n, 2.0, r, r), qn ** 0.5, qn ** 0.5)
        cim1 = bounds.certify_corim1(ProblemParams(n, 2.0, r, r, gamma_moment=g), mom)
        assert rel(cim1.constant, (4 * math.pi) ** (-n / 2) * gamma_fn(2 * g / (2 * g + n)).value ** (g + n / 2)) < 1e-14
        assert rel(res3.radius, cim1.radius) < 1e-12

    @pytest.mark.parametrize("n,r", [(3, 4.0), (3, 10.0), (5, 7.0)])
    def test_corim(self, n, r):
        qh = 0.8
        res3 = bounds.certify_res3(ProblemParams(n, 2.0, r, r), qh ** 0.5, qh ** 0.5)
        cim = bounds.certify_corim(ProblemParams(n, 2.0, r, r), qh)
        a = 1 - n / r
        assert rel(cim.constant, (4 * math.pi) ** (-n / r) * gamma_fn(a).value) < 1e-14
        assert rel(res3.radius, cim.radius) < 1e-12

    def test_p3_equal_rs_inadmissible(self):
        cert = bounds.certify_res3(ProblemParams(3, 3.0, 6.0, 6.0), 1, 1)
        assert not cert.admissible
        assert any("1 - 2/p" in v for v in cert.violated_conditions)


class TestResult4:
    def test_real_part_constant(self):
        cert = bounds.certify_result4(ProblemParams(1, 2.0, 2.0, 2.0), 2.0, 2.0)
        assert cert.exponent == pytest.approx(0.5, rel=1e-15)
        assert rel(cert.constant, 0.5) < 1e-13
        # ||a||_2 ||b||_2 = ||q||_1 = 4 for Poschl-Teller: |Re lambda| <= (4/2)^2
        assert rel(cert.radius, 4.0) < 1e-13
        assert cert.measure is Measure.NEG_REAL_PART

    def test_sup_norm_branch(self):
        cert = bounds.certify_result4(ProblemParams(2, 2.0), 1.5, 2.0)
        assert cert.theorem_id is TheoremId.RELAM1
        assert cert.radius == pytest.approx(3.0)

    def test_corgen_2d(self):
        cert = bounds.certify_corgen(ProblemParams(2, 2.0, 4.0, 4.0, gamma_moment=1.0), 1.0)
        assert rel(cert.constant, 1 / (4 * math.pi)) < 1e-14


class TestResult5And6:
    @pytest.mark.parametrize("n,r", [(1, 3.0), (2, 5.0), (3, 4.0), (3, 8.0), (5, 12.0)])
    def test_theta_pi_equals_result4(self, n, r):
        p = ProblemParams(n, 2.0, r, r, theta=math.pi)
        c5 = bounds.certify_result5(p, 1.0, 1.0)
        c4 = bounds.certify_result4(p, 1.0, 1.0)
        assert rel(c5.constant, c4.constant) < 1e-8

    def test_n3_r8_quadrature(self):
        p = ProblemParams(3, 2.0, 8.0, 8.0, theta=math.pi / 2)
        c5 = bounds.certify_result5(p, 1.0, 1.0)
        quad = symbol_norm(3, 1.0, 4.0, LambdaPolar(1.0, math.pi / 2)).quadrature ** 4
        assert rel(c5.constant, quad / (2 * math.pi) ** 3) < 1e-8

    def test_diverges_near_ray(self):
        p = ProblemParams(3, 2.0, 4.0, 4.0)
        near = bounds.certify_result5(p.replace(theta=0.1), 1, 1).radius
        far = bounds.certify_result5(p.replace(theta=math.pi), 1, 1).radius
        assert near > far

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from([1, 2, 3, 5]), st.floats(0.25, 4), st.floats(0.1, 2 * math.pi - 0.1))
    def test_m1_equals_result5(self, n, off, theta):
        alpha = max(n / 2, 1.0) + off
        p = ProblemParams(n, 2.0, 2 * alpha, 2 * alpha, theta=theta)
        assert rel(bounds.certify_result6(p, 1, 1).constant, bounds.certify_result5(p, 1, 1).constant) < 1e-8

    def test_corres6_polyharmonic(self):
        g, n, m = 1.0, 1, 2.0
        r = 2 * (g + n / (2 * m))
        mom = 0.6
        p = ProblemParams(n, 2.0, r, r, m=m, theta=2.0, gamma_moment=g)
        c = bounds.certify_corres6(p, mom)
        assert c.exponent == pytest.approx(1.0)
        qn = mom ** (1 / (g + n / (2 * m)))
        assert rel(c.radius, bounds.certify_result6(p, qn ** 0.5, qn ** 0.5).radius) < 1e-12

    def test_alpha_window(self):
        cert = bounds.certify_result6(ProblemParams(3, 2.0, 4.0, 4.0, m=0.5, theta=1.0), 1, 1)
        assert not cert.admissible


class TestSharpen:
    def test_remark_young_3d(self):
        p = ProblemParams(3, 2.0, 4.0, 4.0, theta=1.0)
        kind, factor, _ = sharpening_factor(TheoremId.RES1, p)
        direct = (babenko_factor(2.0) * babenko_factor(4 / 3) ** 2) ** 3
        assert kind is Sharpening.BECKNER_YOUNG
        assert rel(factor, direct) < 1e-12
        # (A_2 A_{4/3} A_{4/3})^3 = 8 * 3^(-9/4); the constant goes as factor**alpha, alpha = 2
        assert rel(factor, 8 * 3 ** -2.25) < 1e-12
        cert = bounds.certify_res1(p, 1, 1)
        assert rel(sharpen(cert, p).constant, cert.constant * factor ** 2) < 1e-14

    def test_endpoint_indices_no_change(self):
        # r = s = 2, p = 2: beta = gamma' = 1, factor exactly 1
        p = ProblemParams(1, 2.0, 2.0, 2.0)
        kind, factor, _ = sharpening_factor(TheoremId.RESULT4, p)
        assert factor == 1.0

    def test_out_of_window_refused(self):
        # p = 4, r = inf: 1/beta = 1/4, beta = 4 lies outside [1, 2]
        p = ProblemParams(3, 4.0, INF, INF, theta=1.0)
        cert = bounds.certify_res1(p, 1, 1)
        out = sharpen(cert, p)
        assert out.constant == cert.constant
        assert out.sharpening_applied is Sharpening.NONE
        assert any("sharpening refused" in note for note in out.notes)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 6), st.floats(1.2, 6), st.floats(2.0, 40), st.floats(2.0, 40),
           st.floats(0.1, 6.2), st.floats(0.2, 3))
    def test_never_increases(self, n, p, r, s, theta, g):
        params = ProblemParams(n, p, r, s, m=1.0, theta=theta, tau=2.0, gamma_moment=g)
        norms = FixedNorms(1.0, 1.0, moments={g + n / 2: 1.0, g + 1.5: 1.0},
                           q_norms={r / 2: 1.0}, weighted={(2.0, r): 1.0})
        for tid in TheoremId:
            cert = certify(tid, params, norms)
            if cert.admissible:
                assert sharpen(cert, params).constant <= cert.constant * (1 + 1e-14)


class TestApplicable:
    def test_n3_r4(self):
        ids = admissible_ids(ProblemParams(3, 2.0, 4.0, 4.0, theta=1.0))
        for tid in (TheoremId.RES1, TheoremId.RES2, TheoremId.RES3, TheoremId.RESULT4,
                    TheoremId.RESULT5, TheoremId.RESULT6):
            assert tid in ids

    def test_n3_r3_convolution_excluded(self):
        ids = admissible_ids(ProblemParams(3, 2.0, 3.0, 3.0, theta=1.0))
        for tid in (TheoremId.RES1, TheoremId.COR1, TheoremId.RES2, TheoremId.CORRES21,
                    TheoremId.RESULT4, TheoremId.RESULT5):
            assert tid not in ids

    @pytest.mark.parametrize("n", [1, 2])
    def test_sup_norms_only_relam1(self, n):
        assert admissible_ids(ProblemParams(n, 2.0, INF, INF)) == {TheoremId.RELAM1}

    def test_sup_norms_3d_keeps_young_route(self):
        # the Young-route theorems accept r = s = inf with alpha = 1
        ids = admissible_ids(ProblemParams(3, 2.0, INF, INF))
        assert TheoremId.RELAM1 in ids and TheoremId.RES2 in ids
        c = bounds.certify_res2(ProblemParams(3, 2.0, INF, INF), 1.5, 2.0)
        assert c.radius == pytest.approx(3.0)

    def test_reports_every_theorem(self):
        rows = applicable_theorems(ProblemParams(2))
        assert [r[0] for r in rows] == list(TheoremId)
        for tid, ok, v in rows:
            assert ok == (len(v) == 0)


class TestCertificate:
    def test_holds_at(self):
        cert = bounds.certify_result4(ProblemParams(1, 2.0, 2.0, 2.0), 2.0, 2.0)
        assert cert.holds_at(-1.0) == pytest.approx(3.0)
        assert cert.holds_at(1 + 1j) is None

    def test_to_dict_roundtrip_fields(self):
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 4.0, 4.0, theta=1.0), 1, 1)
        d = cert.to_dict()
        assert d["theorem_id"] == "RES1" and d["radius"] == cert.radius

    def test_certify_all(self):
        certs = bounds.certify_all(ProblemParams(1, 2.0, 2.0, 2.0), FixedNorms(2.0, 2.0))
        assert len(certs) == len(TheoremId)
        ok = [c for c in certs if c.admissible]
        assert [c.theorem_id for c in ok] == [TheoremId.RESULT4]
