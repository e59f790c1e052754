import numpy as np
import pytest

from gstf import (BoundaryMassError, Gaussian, Grid1D, GridError, Hermite,
                  Modulate, SampledFunction, TFGrid, Translate, adjoint_stft,
                  build_grid, catalog_eval, dft, dft2, idft,
                  spectral_derivative, stft, twisted_convolution_defect)
from gstf.grids import TFR

from conftest import rel_max_err


class TestDft:
    def test_gaussian_is_fixed_point(self, grid10):
        # exp(-x^2/2) is its own unitary Fourier transform.
        f = catalog_eval(Gaussian(1.0), grid10)
        F = dft(f)
        ref = np.exp(-0.5 * F.x**2)
        assert rel_max_err(F.values, ref) < 1e-13

    def test_scaled_gaussian_oracle(self, grid10):
        # F[exp(-a x^2/2)](xi) = a^(-1/2) exp(-xi^2/(2a))
        a = 2.0
        F = dft(catalog_eval(Gaussian(a), grid10))
        ref = a**-0.5 * np.exp(-F.x**2 / (2 * a))
        assert rel_max_err(F.values, ref) < 1e-13

    def test_translation_modulation_exchange(self, grid10):
        # F[f(. - x0)](xi) = exp(-i x0 xi) F[f](xi)
        x0 = 1.5
        F_shifted = dft(catalog_eval(Translate(Gaussian(1.0), x0), grid10))
        F = dft(catalog_eval(Gaussian(1.0), grid10))
        ref = np.exp(-1j * x0 * F.x) * F.values
        assert rel_max_err(F_shifted.values, ref) < 1e-12

    def test_modulation_becomes_translation(self, grid10):
        xi0 = 2.0
        F_mod = dft(catalog_eval(Modulate(Gaussian(1.0), xi0), grid10))
        ref = np.exp(-0.5 * (F_mod.x - xi0) ** 2)
        assert rel_max_err(F_mod.values, ref) < 1e-12

    def test_round_trip(self, grid10):
        f = catalog_eval(Hermite(3), grid10)
        g = idft(dft(f))
        assert rel_max_err(g.values, f.values) < 1e-12
        assert g.grid.step == pytest.approx(grid10.step)

    def test_double_transform_is_reflection(self, grid10):
        # F^2 f(x) = f(-x); on a symmetric grid that is index reversal.
        f = catalog_eval(Translate(Gaussian(1.0), 2.0), grid10)
        ff = dft(dft(f))
        assert rel_max_err(ff.values, f.values[::-1]) < 1e-11

    def test_unitarity(self, grid10):
        f = catalog_eval(Hermite(2), grid10)
        assert dft(f).norm2() == pytest.approx(f.norm2(), rel=1e-12)

    def test_rejects_non_pow2(self):
        g = Grid1D(0.0, 0.1, 100)
        with pytest.raises(GridError):
            dft(SampledFunction(g, np.zeros(100)))

    def test_rejects_off_center(self):
        g = Grid1D(1.0, 0.1, 64)
        with pytest.raises(GridError):
            dft(SampledFunction(g, np.zeros(64)))


class TestSpectralDerivative:
    def test_matches_analytic_derivative(self, grid10):
        # D = -i d/dx on exp(-x^2/2): D f = i x f
        f = catalog_eval(Gaussian(1.0), grid10)
        df = spectral_derivative(f, 1)
        ref = 1j * f.x * f.values
        assert np.max(np.abs(df.values - ref)) < 1e-10

    def test_second_order(self, grid10):
        f = catalog_eval(Gaussian(1.0), grid10)
        d2 = spectral_derivative(f, 2)
        ref = -(f.x**2 - 1.0) * f.values  # (-i d/dx)^2 f = -f''
        assert np.max(np.abs(d2.values - ref)) < 1e-9

    def test_order_zero_is_identity(self, grid10):
        f = catalog_eval(Hermite(1), grid10)
        assert spectral_derivative(f, 0) is f

    def test_rejects_boundary_mass(self):
        g = build_grid(2.0, 8)  # gaussian not decayed at |x| = 2
        f = catalog_eval(Gaussian(0.1), g)
        with pytest.raises(BoundaryMassError):
            spectral_derivative(f, 1)


class TestStft:
    def test_matches_direct_quadrature(self, grid10, tf_small):
        # Independent oracle: brute-force windowed Riemann sum at a few points.
        f = catalog_eval(Hermite(1), grid10)
        w = catalog_eval(Gaussian(1.0), grid10)
        v = stft(f, w, tf_small)
        t = grid10.coords
        for i in (10, 64, 100):
            for j in (5, 64, 120):
                x = tf_small.xgrid.coords[i]
                xi = tf_small.xigrid.coords[j]
                direct = grid10.step / np.sqrt(2 * np.pi) * np.sum(
                    f.values * np.conj(np.interp(t - x, t, w.values.real))
                    * np.exp(-1j * xi * t))
                assert abs(v.values[i, j] - direct) < 1e-12

    def test_gaussian_pair_closed_form(self, grid10, tf_small):
        f = catalog_eval(Gaussian(1.0), grid10)
        v = stft(f, f, tf_small)
        x = tf_small.xgrid.coords[:, None]
        xi = tf_small.xigrid.coords[None, :]
        ref = 2**-0.5 * np.exp(-(x**2 + xi**2) / 4.0)
        assert np.max(np.abs(np.abs(v.values) - ref)) < 1e-12

    def test_moyal_energy_identity(self, grid10, tf_small):
        f = catalog_eval(Hermite(2), grid10)
        w = catalog_eval(Gaussian(1.0), grid10)
        v = stft(f, w, tf_small)
        assert v.norm2() ** 2 == pytest.approx((f.norm2() * w.norm2()) ** 2,
                                               rel=1e-8)

    def test_inversion(self, grid10, tf_small):
        f = catalog_eval(Hermite(2), grid10)
        w = catalog_eval(Gaussian(1.0), grid10)
        rec = adjoint_stft(stft(f, w, tf_small), w)
        assert rel_max_err(rec.values / w.norm2() ** 2, f.values) < 1e-9

    def test_adjointness_inner_products(self, grid10, tf_small):
        # <stft(f), F>_{2d} = <f, adjoint_stft(F)>_{1d}
        rng = np.random.default_rng(3)
        f = catalog_eval(Hermite(1), grid10)
        w = catalog_eval(Gaussian(1.0), grid10)
        F = TFR(tf_small, rng.standard_normal((129, 129))
                + 1j * rng.standard_normal((129, 129)))
        v = stft(f, w, tf_small)
        lhs = tf_small.xgrid.step * tf_small.xigrid.step * np.sum(
            v.values * np.conj(F.values))
        rhs = grid10.step * np.sum(f.values * np.conj(adjoint_stft(F, w).values))
        scale = v.norm2() * F.norm2()
        assert abs(lhs - rhs) < 1e-12 * scale

    def test_rejects_off_step_x_positions(self, grid10):
        f = catalog_eval(Gaussian(1.0), grid10)
        bad = TFGrid(Grid1D(0.0, 1.0001 * grid10.step, 9), Grid1D(0.0, 1.0, 9))
        with pytest.raises(GridError):
            stft(f, f, bad)

    def test_rejects_mismatched_grids(self, grid10, grid11, tf_small):
        f = catalog_eval(Gaussian(1.0), grid10)
        w = catalog_eval(Gaussian(1.0), grid11)
        with pytest.raises(GridError):
            stft(f, w, tf_small)


class TestDft2:
    def test_separable_gaussian(self):
        g = Grid1D(0.0, 24.0 / 127, 128)
        tf = TFGrid(g, g)
        x = g.coords[:, None]
        xi = g.coords[None, :]
        a = TFR(tf, np.exp(-(x**2 + xi**2) / 2.0))
        ahat = dft2(a)
        u = ahat.tfgrid.xgrid.coords[:, None]
        v = ahat.tfgrid.xigrid.coords[None, :]
        ref = np.exp(-(u**2 + v**2) / 2.0)
        assert np.max(np.abs(ahat.values - ref)) < 1e-12


class TestTwistedConvolution:
    def test_identity_holds_for_gaussian_windows(self, grid10):
        h = grid10.step
        tf = TFGrid(Grid1D(0.0, 8 * h, 129), Grid1D(0.0, 0.25, 129))
        d = twisted_convolution_defect(
            catalog_eval(Hermite(2), grid10),
            catalog_eval(Gaussian(1.0), grid10),
            catalog_eval(Gaussian(2.0), grid10),
            catalog_eval(Gaussian(0.5), grid10),
            tf)
        assert d < 1e-10

    def test_requires_odd_centered_tfgrid(self, grid10):
        h = grid10.step
        tf = TFGrid(Grid1D(0.0, 8 * h, 128), Grid1D(0.0, 0.25, 129))
        f = catalog_eval(Gaussian(1.0), grid10)
        with pytest.raises(GridError):
            twisted_convolution_defect(f, f, f, f, tf)
