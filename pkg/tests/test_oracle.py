import math
import warnings

import numpy as np
import pytest

from sphtriple.harmonics import bidegree, zonal
from sphtriple.oracle import (
    KernelSpec,
    MCEstimate,
    RegionError,
    complex_structure,
    gaussian_pairing_check,
    mc_apply_operator,
    mc_multiplier,
    mc_triple,
    sample_sphere,
    shard_rng,
    symplectic_form,
    torus_quadrature_triple,
)
from sphtriple.specfun import DomainError, gamma
from sphtriple.spectra import A_k, Distance, InnerProduct, Symplectic, c_Nl, sphere_volume, t_eigen
from sphtriple.triple import trace_series

from conftest import rel_err


class TestSampling:
    def test_unit_norm(self, rng):
        X = sample_sphere(5, rng, 1000)
        assert X.shape == (1000, 5)
        assert np.allclose(np.linalg.norm(X, axis=1), 1.0)

    def test_single_point(self, rng):
        assert sample_sphere(3, rng).shape == (3,)

    def test_second_moments(self, rng):
        # E[x_i x_j] = delta_ij / N on S^{N-1}
        N = 4
        X = sample_sphere(N, rng, 200_000)
        cov = X.T @ X / len(X)
        assert np.allclose(cov, np.eye(N) / N, atol=5e-3)

    def test_shard_streams_independent_and_reproducible(self):
        a = shard_rng(7, 0).standard_normal(4)
        b = shard_rng(7, 1).standard_normal(4)
        c = shard_rng(7, 0).standard_normal(4)
        assert not np.allclose(a, b)
        assert np.array_equal(a, c)


class TestSymplecticForm:
    def test_antisymmetric(self, rng):
        X, Y = rng.normal(size=(2, 10, 6))
        assert np.allclose(symplectic_form(X, Y), -symplectic_form(Y, X))

    def test_complex_structure(self, rng):
        X, Y = rng.normal(size=(2, 10, 4))
        assert np.allclose(symplectic_form(X, Y), np.einsum("ij,ij->i", X, complex_structure(Y)))
        assert np.allclose(complex_structure(complex_structure(Y)), -Y)

    def test_n1_is_determinant(self):
        assert symplectic_form([1.0, 0.0], [0.0, 1.0]) == -1.0

    def test_odd_dimension(self):
        with pytest.raises(ValueError):
            symplectic_form(np.ones(3), np.ones(3))


class TestKernelSpec:
    def test_polynomial_flag(self):
        assert KernelSpec(Symplectic(1), (2, 0, 4)).polynomial
        assert not KernelSpec(Symplectic(1), (2, 1, 4)).polynomial

    def test_for_operator(self):
        assert KernelSpec.for_operator(Symplectic(2), -4).exponents == (2.0,)
        assert KernelSpec.for_operator(InnerProduct(3), -1.5).exponents == (0.0,)

    def test_arity(self):
        with pytest.raises(ValueError):
            KernelSpec(Symplectic(1), (1, 2))


class TestMonteCarlo:
    def test_desk_value_small(self):
        est = mc_triple(KernelSpec(Symplectic(1), (2, 2, 2)), 200_000, 1)
        assert est.agrees(3 * math.pi**3 / 4)

    def test_deterministic(self):
        k = KernelSpec(Distance(2), (2, 0, 2))
        a = mc_triple(k, 50_000, 99)
        b = mc_triple(k, 50_000, 99, workers=1)
        assert a == b
        assert mc_triple(k, 50_000, 100).mean != a.mean

    def test_chunking_does_not_change_result(self):
        k = KernelSpec(InnerProduct(3), (2, 2, 0))
        a = mc_triple(k, 30_000, 5, chunk=1 << 18)
        b = mc_triple(k, 30_000, 5, chunk=1000)
        assert math.isclose(a.mean, b.mean, rel_tol=1e-12)

    def test_constant_kernel_exact(self):
        est = mc_triple(KernelSpec(InnerProduct(4), (0, 0, 0)), 1000, 3)
        assert est.stderr == 0 and rel_err(est.mean, sphere_volume(4) ** 3) < 1e-14

    def test_inner_against_series(self):
        est = mc_triple(KernelSpec(InnerProduct(3), (2, 2, 2)), 200_000, 11)
        assert est.agrees(trace_series(InnerProduct(3), (-3.5,) * 3).value.real)

    def test_singular_kernel_warns(self):
        with pytest.warns(RuntimeWarning):
            est = mc_triple(KernelSpec(InnerProduct(3), (-0.25, 0, 0)), 20_000, 2)
        assert est.mean > 0

    def test_region_refused(self):
        with pytest.raises(RegionError):
            mc_triple(KernelSpec(Distance(1), (-1.5, 0, 0)), 1000, 0)
        with pytest.raises(RegionError):
            mc_triple(KernelSpec(InnerProduct(3), (-0.6, 0, 0)), 1000, 0)

    def test_operator_eigenvalue(self):
        est = mc_multiplier(KernelSpec.for_operator(Symplectic(1), -3), bidegree(1, 2, 0, part="real"), [1.0, 0.0], 200_000, 4)
        assert est.agrees(t_eigen(1, 2, 0, -3).value.real)

    def test_inner_operator_eigenvalue(self):
        est = mc_multiplier(KernelSpec.for_operator(InnerProduct(3), -3.5), zonal(3, 2), [0, 0, 1.0], 200_000, 8)
        assert est.agrees(c_Nl(3, 1, -3.5).value.real)

    def test_operator_input_checks(self):
        k = KernelSpec.for_operator(Symplectic(1), -3)
        with pytest.raises(ValueError):
            mc_apply_operator(k, bidegree(1, 2, 0), [1.0, 0.0], 1000, 0)  # complex valued
        with pytest.raises(ValueError):
            mc_apply_operator(k, zonal(3, 1), [1.0, 0.0], 1000, 0)
        with pytest.raises(ValueError):
            mc_apply_operator(k, zonal(2, 1), [1.0, 1.0], 1000, 0)
        with pytest.raises(DomainError):
            mc_multiplier(k, bidegree(1, 2, 0, part="imag"), [1.0, 0.0], 1000, 0)

    def test_z_score(self):
        est = MCEstimate(1.0, 0.1, 100, 0)
        assert math.isclose(est.z_score(1.25), 2.5)
        assert MCEstimate(1.0, 0.0, 100, 0).z_score(2.0) == math.inf


class TestTorus:
    def test_values(self):
        assert rel_err(torus_quadrature_triple(64, (2, 2, 2)), 3 * math.pi**3 / 4) < 1e-12
        assert rel_err(torus_quadrature_triple(64, (0, 0, 0)), 8 * math.pi**3) < 1e-14
        assert rel_err(torus_quadrature_triple(128, (2, 2, 2), "distance"), 48 * math.pi**3) < 1e-12

    def test_grid_independent_once_resolved(self):
        a = torus_quadrature_triple(64, (4, 2, 6))
        assert rel_err(torus_quadrature_triple(256, (4, 2, 6)), a) < 1e-12

    @pytest.mark.parametrize("bad", [(1, 2, 2), (-2, 0, 0), (2, 2)])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            torus_quadrature_triple(64, bad)
        with pytest.raises(ValueError):
            torus_quadrature_triple(48, (2, 2, 2))


class TestGaussianPairing:
    @pytest.mark.parametrize("lam", [-0.25, -0.5, -0.75, -0.1, -0.9])
    def test_agrees(self, lam):
        lhs, rhs = gaussian_pairing_check(lam)
        assert rel_err(lhs, rhs) < 1e-9

    def test_half_point_value(self):
        lhs, _ = gaussian_pairing_check(-0.5)
        assert rel_err(lhs, gamma(0.25).real / math.pi**0.25) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            gaussian_pairing_check(0.2)
