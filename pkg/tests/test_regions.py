import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenclose import bounds, regions
from eigenclose.bounds import FixedNorms, ProblemParams, TheoremId
from eigenclose.regions import ExportFormat, build_region, contains, export_region, theta_grid


def result5_region(points, n=3, r=4.0, norms=(1.0, 1.0)):
    grid = theta_grid(points)
    p = ProblemParams(n, 2.0, r, r)
    certs = bounds.theta_family(TheoremId.RESULT5, p, FixedNorms(*norms), grid)
    return build_region(certs, grid), p


class TestBuild:
    def test_relam1_only(self):
        cert = bounds.certify_result4(ProblemParams(1, 2.0), 1.5, 2.0)
        reg = build_region([cert], theta_grid(8))
        assert reg.halfplane_cap == pytest.approx(3.0)
        assert reg.halfplane_source == "RELAM1"
        assert not reg.family_radii
        assert np.all(np.isnan(reg.radius_at_theta))

    def test_res1_monotone_in_theta(self):
        grid = [math.pi / 2, math.pi]
        p = ProblemParams(3, 2.0, 4.0, 4.0)
        certs = [bounds.certify_res1(p.replace(theta=t), 1.0, 1.0) for t in grid]
        reg = build_region(certs, grid)
        r = reg.radius_at_theta
        assert r[1] < r[0]

    def test_result5_meets_result4_cap(self):
        grid = [math.pi / 2, math.pi, 1.5 * math.pi]
        p = ProblemParams(3, 2.0, 4.0, 4.0)
        certs = [bounds.certify_result4(p, 1.2, 0.7)]
        certs += [bounds.certify_result5(p.replace(theta=t), 1.2, 0.7) for t in grid]
        reg = build_region(certs, grid)
        assert abs(reg.radius_at_theta[1] - reg.halfplane_cap) <= 1e-8 * reg.halfplane_cap

    def test_inadmissible_noted(self):
        cert = bounds.certify_res1(ProblemParams(3, 2.0, 3.0, 3.0, theta=1.0), 1, 1)
        reg = build_region([cert], [1.0])
        assert reg.is_empty
        assert any("RES1" in note for note in reg.notes)

    def test_grid_must_avoid_ray(self):
        with pytest.raises(ValueError):
            build_region([], [0.0, 1.0])


class TestContains:
    def test_poschl_teller(self):
        cert = bounds.certify_result4(ProblemParams(1, 2.0, 2.0, 2.0), 2.0, 2.0)
        reg = build_region([cert], theta_grid(36))
        res = contains(reg, -1.0)
        assert res.inside and res.margin == pytest.approx(3.0)
        assert not contains(reg, -5.0).inside

    def test_on_the_curve(self):
        reg, _ = result5_region(360)
        k = 100
        theta, radius = reg.theta_grid[k], reg.radius_at_theta[k]
        res = contains(reg, radius * complex(math.cos(theta), math.sin(theta)))
        assert abs(res.margin) <= 1e-9 * radius

    def test_positive_real_rejected(self):
        reg, _ = result5_region(36)
        with pytest.raises(ValueError):
            contains(reg, 2.0)
        with pytest.raises(ValueError):
            contains(reg, 0.0)

    def test_no_constraint_is_inside(self):
        reg = build_region([], theta_grid(4))
        assert contains(reg, -1 + 1j).inside

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 50), st.floats(0.02, 2 * math.pi - 0.02), st.floats(1.0, 5.0))
    def test_monotone_under_scaling(self, mod, theta, c):
        reg, _ = PT_REGION
        lam = mod * complex(math.cos(theta), math.sin(theta))
        if contains(reg, lam).inside:
            assert contains(reg.scaled(c), lam).inside


def _pt_region():
    grid = theta_grid(72)
    p = ProblemParams(1, 2.0, 2.0, 2.0)
    norms = FixedNorms(2.0, 2.0)
    certs = [bounds.certify(TheoremId.RESULT4, p, norms)]
    certs += bounds.theta_family(TheoremId.RESULT5, p, norms, grid)
    return build_region(certs, grid), p


PT_REGION = _pt_region()


def test_interpolation_against_direct_evaluation():
    reg, p = result5_region(720)
    rng = np.random.default_rng(7)
    lo, hi = reg.theta_grid[0], reg.theta_grid[-1]
    thetas = rng.uniform(lo, hi, 10_000)
    rmin = np.nanmin(reg.radius_at_theta)
    mods = rmin * np.exp(rng.uniform(-1, 3, 10_000))
    disagreements = 0
    for theta, mod in zip(thetas, mods):
        direct = bounds.certify_result5(p.replace(theta=float(theta)), 1.0, 1.0).radius
        lam = mod * complex(math.cos(theta), math.sin(theta))
        if contains(reg, lam).inside != (mod <= direct):
            disagreements += 1
            assert abs(mod - direct) <= 1e-3 * direct
    assert disagreements < 100


class TestExport:
    def test_empty_csv(self):
        reg = build_region([], theta_grid(10))
        assert export_region(reg, ExportFormat.CSV) == b"theta,radius,constraint\n"

    def test_360_rows(self):
        reg, _ = result5_region(360)
        lines = export_region(reg, "csv").decode().splitlines()
        assert lines[0] == "theta,radius,constraint"
        assert len(lines) == 361
        assert all(line.endswith("RESULT5") for line in lines[1:])

    def test_caps_in_csv(self):
        reg, _ = PT_REGION
        lines = export_region(reg, ExportFormat.CSV).decode().splitlines()
        assert len(lines) == 1 + 72 + 1
        assert lines[-1].startswith(",") and lines[-1].endswith("halfplane:RESULT4")

    def test_svg_well_formed(self):
        for reg in (PT_REGION[0], build_region([], theta_grid(4))):
            root = ET.fromstring(export_region(reg, ExportFormat.SVG))
            assert root.tag.endswith("svg")

    def test_json_fields(self):
        import json

        reg, _ = PT_REGION
        d = json.loads(export_region(reg, ExportFormat.STRUCTURED))
        assert d["halfplane_cap"] == pytest.approx(4.0)
        assert len(d["theta_grid"]) == 72
        assert set(d) >= {"theta_provenance", "radius_at_theta", "strip_cap", "notes"}

    def test_deterministic(self):
        a = export_region(_pt_region()[0], ExportFormat.STRUCTURED)
        b = export_region(_pt_region()[0], ExportFormat.STRUCTURED)
        assert a == b


def test_principal_arg():
    assert regions.principal_arg(-1.0) == pytest.approx(math.pi)
    assert regions.principal_arg(-1j) == pytest.approx(1.5 * math.pi)
