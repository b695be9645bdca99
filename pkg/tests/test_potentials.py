import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenclose import gridio
from eigenclose.catalog import CATALOG, build_potential
from eigenclose.potentials import (DivergenceError, Factorization, GridData, NormMethod,
                                   PotentialNorms, PotentialSpec, Representation, complex_sign,
                                   factorize, lp_norm, weight_norm_closed)
from eigenclose.specfun import beta_fn


def rel(a, b):
    return abs(a - b) / abs(b)


def sech(x):
    e = np.exp(-np.abs(x))
    return 2 * e / (1 + e * e)


class TestLpNorm:
    def test_sech_1d(self):
        comp = PotentialSpec.radial(1, lambda r: 2 * sech(r)).q
        rep = lp_norm(comp, 2.0)
        assert rel(rep.value, 2 * math.sqrt(2)) < 1e-10
        assert rep.method is NormMethod.QUADRATURE

    def test_rational_3d(self):
        comp = PotentialSpec.radial(3, lambda r: (1 + r * r) ** -1.0).q
        assert rel(lp_norm(comp, 4.0).value ** 4, 2 * math.pi * beta_fn(1.5, 2.5).value) < 1e-10

    def test_gaussian_3d(self):
        comp = PotentialSpec.radial(3, lambda r: 1j * np.exp(-r * r)).q
        assert rel(lp_norm(comp, 2.0).value ** 2, (math.pi / 2) ** 1.5) < 1e-10

    def test_separable_gaussian(self):
        g = lambda x: np.exp(-x * x)
        sep = PotentialSpec.separable([g, g, g]).q
        assert rel(lp_norm(sep, 2.0).value ** 2, (math.pi / 2) ** 1.5) < 1e-10

    def test_sup(self):
        comp = PotentialSpec.radial(1, lambda r: -2 * sech(r) ** 2).q
        assert lp_norm(comp, math.inf).value == pytest.approx(2.0, rel=1e-12)

    def test_divergent(self):
        comp = PotentialSpec.radial(3, lambda r: (1 + r * r) ** -0.5).q
        with pytest.raises(DivergenceError):
            lp_norm(comp, 3.0)

    def test_weighted(self):
        # (1+r^2)^(1/2) * (1+r^2)^-2 = (1+r^2)^-3/2 ; its L2 norm squared in R^3
        comp = PotentialSpec.radial(3, lambda r: (1 + r * r) ** -2.0).q
        expected = weight_norm_closed(3, 3.0, 2.0).value
        assert rel(lp_norm(comp, 2.0, weight=1.0).value, expected) < 1e-9

    @pytest.mark.slow
    def test_grid_converges_to_radial(self):
        # the cusp at 0 keeps the midpoint rule from being spectrally exact
        prof = lambda r: np.exp(-r) * (1 + 0.5j)
        radial = lp_norm(PotentialSpec.radial(3, prof).q, 2.0).value
        gaps = []
        for npts in (32, 64):
            g = GridData(6.0, (npts,) * 3, np.zeros((npts,) * 3))
            grid = g.with_samples(prof(g.radii()))
            rep = lp_norm(PotentialSpec.from_grid(grid).q, 2.0)
            gaps.append(rel(rep.value, radial))
            assert rep.method is NormMethod.GRID_SUM
        assert gaps[1] < 0.02
        assert gaps[1] < gaps[0]


class TestWeightNorm:
    def test_cross_identity(self):
        rep = weight_norm_closed(3, 2.0, 4.0)
        assert rel(rep.value ** 4, math.pi ** 2 / 8) < 1e-12
        assert rel(rep.value ** 4, 2 * math.pi * beta_fn(1.5, 2.5).value) < 1e-12

    def test_arctan(self):
        assert rel(weight_norm_closed(1, 2.0, 1.0).value, math.pi) < 1e-13

    def test_divergence(self):
        with pytest.raises(DivergenceError):
            weight_norm_closed(3, 1.0, 3.0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 4), st.floats(0.5, 4), st.floats(1.0, 6))
    def test_matches_quadrature(self, n, tau, r):
        if tau * r <= n + 0.3:
            return
        comp = PotentialSpec.radial(n, lambda x: (1 + x * x) ** (-tau / 2)).q
        assert rel(lp_norm(comp, r).value, weight_norm_closed(n, tau, r).value) < 1e-8


class TestFactorize:
    def test_sqrt_sign_real(self):
        pot = PotentialSpec.radial(1, lambda r: -2 * sech(r) ** 2)
        a, b = factorize(pot)
        x = np.linspace(-3, 3, 13)[:, None]
        assert np.allclose(a(x), math.sqrt(2) * sech(x[:, 0]))
        assert np.allclose(b(x), -math.sqrt(2) * sech(x[:, 0]))

    def test_sqrt_sign_complex(self):
        pot = PotentialSpec.radial(1, lambda r: 1j * np.exp(-r * r))
        a, b = factorize(pot)
        x = np.linspace(-2, 2, 9)[:, None]
        assert np.allclose(np.abs(a(x)), np.exp(-x[:, 0] ** 2 / 2))
        assert np.allclose(np.abs(b(x)), np.exp(-x[:, 0] ** 2 / 2))
        assert np.allclose(a(x) * b(x), pot(x))

    def test_weighted(self):
        pot = PotentialSpec.radial(1, lambda r: (1 + r * r) ** -2.0,
                                   factorization=Factorization.WEIGHTED, tau=2.0)
        a, b = factorize(pot)
        x = np.linspace(-3, 3, 7)[:, None]
        assert np.allclose(b(x), (1 + x[:, 0] ** 2) ** -1)
        assert np.allclose(a(x) * b(x), pot(x))

    def test_weighted_needs_tau(self):
        with pytest.raises(ValueError):
            PotentialSpec.radial(1, np.exp, factorization=Factorization.WEIGHTED)

    def test_explicit(self):
        pot = PotentialSpec.radial(1, lambda r: np.exp(-r), factorization=Factorization.EXPLICIT,
                                   explicit=(lambda r: np.exp(-r / 4), lambda r: np.exp(-3 * r / 4)))
        a, b = factorize(pot)
        x = np.array([[0.5], [2.0]])
        assert np.allclose(a(x) * b(x), pot(x))

    def test_sign_of_zero(self):
        assert complex_sign(np.array([0.0, -2.0, 3j])).tolist() == [0, -1, 1j]

    @pytest.mark.parametrize("t", [1.0, 2.0, 2.5])
    def test_holder_consistency(self, t):
        for pot in (build_potential("complex-gaussian", 3, 2.0), build_potential("poschl-teller", 1)):
            norms = PotentialNorms(pot)
            a, b = norms.factor_norms(2 * t, 2 * t)
            assert rel(a * b, norms.q_norm(t)) < 1e-8


class TestPotentialNorms:
    def test_poschl_teller(self):
        norms = PotentialNorms(build_potential("poschl-teller", 1))
        assert rel(norms.moment(1.0), 4.0) < 1e-10
        a, b = norms.factor_norms(2.0, 2.0)
        assert rel(a * b, 4.0) < 1e-10

    def test_cache_and_reports(self):
        norms = PotentialNorms(build_potential("poschl-teller", 1))
        norms.factor_norms(2.0, 2.0)
        norms.factor_norms(2.0, 2.0)
        assert len(norms.reports()) == 2

    def test_weighted_moment(self):
        norms = PotentialNorms(build_potential("rational", 3, coupling=1.0, shape=2.0))
        # int |(1+r^2)^(1/2) (1+r^2)^-2|^2 = ||(1+r^2)^-3/2||_2^2
        assert rel(norms.weighted_moment(1.0, 2.0), weight_norm_closed(3, 3.0, 2.0).value ** 2) < 1e-8

    def test_scaled(self):
        pot = build_potential("poschl-teller", 1)
        assert rel(PotentialNorms(pot.scaled(0.1)).moment(1.0), 0.4) < 1e-10


class TestCatalog:
    def test_names(self):
        assert {"poschl-teller", "complex-gaussian", "rational", "square-well", "zero"} <= set(CATALOG)

    def test_unknown(self):
        with pytest.raises(ValueError):
            build_potential("nope", 1)

    def test_square_well(self):
        pot = build_potential("square-well", 1, coupling=-(6 + 3j), width=1.0)
        assert pot(np.array([[0.5]]))[0] == -(6 + 3j)
        assert pot(np.array([[1.5]]))[0] == 0


class TestGrid:
    def _grid(self, dim=2, n=10):
        rng = np.random.default_rng(1)
        shape = (n,) * dim
        return GridData(3.0, shape, rng.normal(size=shape) + 1j * rng.normal(size=shape))

    def test_nodes(self):
        g = self._grid(1, 8)
        assert np.allclose(g.axis(0), -3 + (np.arange(8) + 0.5) * 0.75)

    def test_readonly(self):
        g = self._grid()
        with pytest.raises(ValueError):
            g.samples[0, 0] = 1

    def test_too_few(self):
        with pytest.raises(ValueError):
            GridData(1.0, (4,), np.zeros(4))

    def test_interpolate_at_nodes(self):
        g = self._grid(2, 9)
        pts = np.stack(np.meshgrid(g.axis(0), g.axis(1), indexing="ij"), axis=-1)
        assert np.allclose(g.interpolate(pts), g.samples)
        assert g.interpolate(np.array([[10.0, 0.0]]))[0] == 0

    @pytest.mark.parametrize("writer,reader", [(gridio.write_text, gridio.read_text),
                                               (gridio.write_binary, gridio.read_binary)])
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_roundtrip(self, tmp_path, writer, reader, dim):
        g = self._grid(dim, 8 + dim)
        path = tmp_path / "grid.dat"
        writer(g, path)
        back = reader(path)
        assert back.counts == g.counts and back.half_width == g.half_width
        assert np.array_equal(back.samples, g.samples)
        auto = gridio.read_grid(path)
        assert np.array_equal(auto.samples, g.samples)

    def test_bad_header(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("hello\n")
        with pytest.raises(ValueError):
            gridio.read_grid(p)

    def test_truncated_binary(self, tmp_path):
        g = self._grid(1, 8)
        p = tmp_path / "g.bin"
        gridio.write_binary(g, p)
        p.write_bytes(p.read_bytes()[:-5])
        with pytest.raises(ValueError):
            gridio.read_binary(p)

    def test_grid_potential_factorizes(self):
        g = self._grid(2, 12)
        pot = PotentialSpec.from_grid(g)
        a, b = factorize(pot)
        assert a.kind is Representation.GRID
        assert np.allclose(a.grid.samples * b.grid.samples, g.samples)
