import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from sphtriple.specfun import PoleError, is_gamma_pole
from sphtriple.spectra import (
    A_0_closed,
    A_k,
    B_N,
    C_N,
    C_N_trig,
    Distance,
    InnerProduct,
    OperatorKind,
    ParameterError,
    ParamSet,
    Symplectic,
    c_Nl,
    distance_family,
    gamma_k_funk_hecke,
    gamma_k_printed,
    gamma_k_ratio_constant,
    inner_family,
    param_convert,
    q_eigen,
    r_eigen,
    rcn_constant,
    sphere_volume,
    symplectic_family,
    t_eigen,
)

from conftest import rel_err


def pole_distance(z):
    """Distance from ``z`` to the nearest nonpositive integer."""
    z = complex(z)
    k = min(0, round(z.real))
    return abs(z - k)


def gegenbauer_normalised(N, k, t):
    if N == 2:
        return special.eval_chebyt(k, t)
    lam = (N - 2) / 2
    return special.eval_gegenbauer(k, lam, t) / special.eval_gegenbauer(k, lam, 1.0)


def funk_hecke(N, k, kernel_power, kernel_of_t, singular_at):
    """``vol(S^{N-2}) int_{-1}^{1} kernel(t) P_k(t) (1-t^2)^{(N-3)/2} dt``.

    The kernel is ``|t - singular_at|^kernel_power`` times a smooth factor;
    QUADPACK's algebraic weights absorb both endpoint singularities.
    """
    w = (N - 3) / 2
    vol = sphere_volume(N - 1) if N > 1 else 2.0

    def smooth(t):
        return kernel_of_t(t) * gegenbauer_normalised(N, k, t)

    if singular_at == 1.0:
        # kernel (1-t)^p (1-t)^w (1+t)^w
        val, _ = integrate.quad(smooth, -1, 1, weight="alg", wvar=(w, w + kernel_power), epsabs=0, epsrel=1e-11, limit=400)
    else:
        # |t|^p (1-|t|)^w on each half; (1+|t|)^w stays in the integrand
        def half(t, sgn):
            return smooth(sgn * t) * (1 + t) ** w

        left, _ = integrate.quad(half, 0, 1, args=(-1,), weight="alg", wvar=(kernel_power, w), epsabs=0, epsrel=1e-11, limit=400)
        right, _ = integrate.quad(half, 0, 1, args=(1,), weight="alg", wvar=(kernel_power, w), epsabs=0, epsrel=1e-11, limit=400)
        val = left + right
    return vol * val


class TestOperatorKind:
    def test_properties(self):
        assert Symplectic(2).ambient_dim == 4 and Symplectic(2).shift == 2
        assert Distance(3).ambient_dim == 4 and Distance(3).shift == 3
        assert InnerProduct(5).ambient_dim == 5 and InnerProduct(5).shift == 2.5

    def test_validation(self):
        with pytest.raises(ValueError):
            OperatorKind("hyperbolic", 2)
        with pytest.raises(ValueError):
            Symplectic(0)
        with pytest.raises(ValueError):
            InnerProduct(1)

    def test_sphere_volume(self):
        assert math.isclose(sphere_volume(2), 2 * math.pi)
        assert math.isclose(sphere_volume(3), 4 * math.pi)
        assert math.isclose(sphere_volume(4), 2 * math.pi**2)


class TestSymplecticMultipliers:
    def test_constant_kernel(self):
        for n in (1, 2, 3):
            # mu = -n: kernel exponent zero, operator integrates against 1
            assert rel_err(A_k(n, 0, -n).value, sphere_volume(2 * n)) < 1e-13
            assert A_k(n, 2, -n).is_zero

    def test_odd_vanishes(self):
        assert A_k(2, 3, -4.5).is_zero

    def test_A0_closed(self):
        for n in (1, 2, 3):
            for mu in (-4.3, -2.5 + 1j, 0.7):
                assert rel_err(A_k(n, 0, mu).value, A_0_closed(n, mu).value) < 1e-13

    def test_ratio_form(self):
        n, mu = 2, -3.7 + 0.4j
        for l in range(6):
            ratio = A_k(n, 2 * l + 2, mu).value / A_k(n, 2 * l, mu).value
            assert rel_err(ratio, (l + (n + mu) / 2) / (l + (n - mu) / 2)) < 1e-13

    def test_t_eigen_sign(self):
        assert rel_err(t_eigen(1, 2, 0, -3).value, -math.pi / 2) < 1e-14
        assert rel_err(t_eigen(2, 1, 1, -4).value, math.pi**2 / 6) < 1e-14

    @given(st.integers(1, 3), st.integers(0, 6), st.floats(-7, 2), st.floats(-1, 1))
    def test_equals_rotated_inner_multiplier(self, n, l, x, y):
        # |[X, Y]| = |<X, J Y>| and J acts on H^{2l} of C^n-degree by (-1)^l
        mu = complex(x, y)
        a, c = A_k(n, 2 * l, mu), c_Nl(2 * n, l, mu)
        if not (a.is_finite and c.is_finite):
            assert a.tag == c.tag
            return
        assert rel_err(a.value, (-1) ** l * c.value) < 1e-11


class TestFourierMultipliers:
    @given(st.integers(1, 6), st.floats(-5, 3), st.floats(-1, 1))
    def test_B_involution(self, N, x, y):
        lam = complex(x, y)
        b1, b2 = B_N(N, lam, 0), B_N(N, -lam - N, 0)
        if b1.is_finite and b2.is_finite:
            # forming -lam - N costs digits in proportion to 1 / (distance to a pole)
            dist = min(pole_distance(-lam / 2), pole_distance((lam + N) / 2))
            assert rel_err(b1.value * b2.value, 1.0) < 1e-12 + 1e-15 / dist

    def test_B_degree_phase(self):
        # B_N(lam, k) carries i^{-k}
        v0, v1 = B_N(3, -1.3, 1), B_N(3, -1.3, 5)
        assert abs(v0.value.real) < 1e-15 * abs(v0.value) and v0.value.imag < 0
        assert v1.value.imag < 0

    def test_B1_half(self):
        assert rel_err(B_N(1, -0.5, 0).value, 1.0) < 1e-14

    @given(st.integers(1, 6), st.floats(-6, 4), st.floats(-1, 1))
    def test_C_two_forms(self, N, x, y):
        mu = complex(x, y)
        c = C_N(N, mu)
        if is_gamma_pole(mu + N / 2, 1e-6):
            return  # trig form is 0 * inf there
        if c.is_finite:
            # cos(pi w / 2) near an odd w is known only to absolute precision
            w = mu + N / 2
            dist = abs(w - (2 * math.floor(w.real / 2) + 1))
            assert rel_err(C_N_trig(N, mu), c.value) < 1e-10 + 1e-15 / dist

    @given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 4), st.floats(-7, 3), st.floats(-1, 1))
    def test_factorisation(self, n, a, b, x, y):
        if (a + b) % 2:
            b += 1
        mu = complex(x, y)
        c, bb, t = C_N(2 * n, mu), B_N(2 * n, mu - n, a + b), t_eigen(n, a, b, mu)
        if not (c.is_finite and bb.is_finite and t.is_finite):
            return
        lhs = (-1) ** ((a - b) // 2) * c.value * bb.value
        assert rel_err(lhs, t.value) < 1e-10

    def test_inner_eigen_factorisation(self):
        N, mu = 5, -2.3 + 0.3j
        for l in range(5):
            prod = C_N(N, mu).value * B_N(N, mu - N / 2, 2 * l).value
            assert rel_err(c_Nl(N, l, mu).value, prod) < 1e-12


class TestDistanceMultipliers:
    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("mu", [-m - 0.5 for m in (1, 2, 3)] + [-3.3, -5.8])
    def test_funk_hecke_quadrature(self, m, mu):
        # kernel |w - eta|^p with |w - eta|^2 = 2 - 2t
        p = (-mu - m) / 2
        for k in range(4):
            ref = funk_hecke(m + 1, k, p, lambda t: 2.0**p * np.ones_like(t), 1.0)
            v = gamma_k_funk_hecke(m, k, mu).to_complex()
            assert abs(v - ref) <= 1e-9 * max(abs(ref), abs(gamma_k_funk_hecke(m, 0, mu).value))

    def test_printed_ratio_constant(self):
        for m in (1, 2, 3):
            for k, mu in ((0, -3.2), (3, -4.7 + 0.5j), (6, -2.1)):
                ratio = gamma_k_printed(m, k, mu).value / gamma_k_funk_hecke(m, k, mu).value
                assert rel_err(ratio, gamma_k_ratio_constant(m)) < 1e-12

    def test_spec_points(self):
        assert rel_err(gamma_k_printed(2, 0, -2).value, 1.5) < 1e-14
        assert rel_err(gamma_k_funk_hecke(2, 0, -2).value, 4 * math.pi) < 1e-14
        assert rel_err(gamma_k_funk_hecke(2, 1, -4).value, -8 * math.pi / 3) < 1e-14

    def test_rcn_relates_printed_to_symplectic(self):
        for m in (1, 2):
            mu = -3.4 + 0.2j
            for k in range(4):
                ratio = gamma_k_printed(m, k, mu).value / A_k(m, 2 * k, mu).value
                assert rel_err(ratio, rcn_constant(m, mu).value) < 1e-12

    def test_variants(self):
        assert r_eigen(2, 1, -3.3, "printed").value == gamma_k_printed(2, 1, -3.3).value
        with pytest.raises(ValueError):
            distance_family(2, -3.0, "other")


class TestInnerMultipliers:
    @pytest.mark.parametrize("N,mu", [(N, mu) for N in (2, 3, 4, 5) for mu in (-1.2, -2.75, -3.9) if -mu - N / 2 > -1])
    def test_funk_hecke_quadrature(self, N, mu):
        p = -mu - N / 2
        for l in range(3):
            ref = funk_hecke(N, 2 * l, p, lambda t: np.ones_like(t), 0.0)
            assert abs(c_Nl(N, l, mu).to_complex() - ref) <= 1e-9 * abs(c_Nl(N, 0, mu).value)

    def test_volume_point(self):
        for N in range(2, 7):
            assert rel_err(c_Nl(N, 0, -N / 2).value, sphere_volume(N)) < 1e-12

    def test_odd_zero(self):
        assert q_eigen(4, 3, -2.2).is_zero


class TestMultiplierFamily:
    @pytest.mark.parametrize(
        "family",
        [
            symplectic_family(2, -3.3 + 0.2j),
            distance_family(3, -5.5),
            inner_family(4, -2.9 - 0.7j),
            symplectic_family(1, -3.0),  # integer exponent, zeros past l=1
        ],
    )
    def test_values_match_pointwise(self, family):
        vals = family.values(300)
        for l in (0, 1, 2, 5, 50, 299):
            assert abs(vals[l] - family.at(l).to_complex()) <= 1e-11 * max(abs(vals[0]), abs(vals[l]))

    def test_pole_raises(self):
        # Gamma((1 - n - mu)/2) at mu = 1 - n is a pole of every multiplier
        with pytest.raises(PoleError):
            symplectic_family(1, 0.0).values(5)


class TestParamSet:
    def test_symplectic_example(self):
        p = ParamSet.build(Symplectic(1), lam=(-5, -5, -5))
        assert p.mu == (-3, -3, -3)
        assert p.exponents == (2, 2, 2)
        assert p.abgd == (5, 5, 5, 15)

    def test_inner_nu(self):
        p = ParamSet.build(InnerProduct(4), nu=(0, 0, 0))
        assert p.mu == (-2, -2, -2) and p.exponents == (0, 0, 0)

    def test_exponents_input(self):
        p = ParamSet.build(Distance(2), exponents=(2, 2, 2))
        assert p.mu == (-4, -4, -4)

    @given(st.sampled_from([Symplectic(1), Symplectic(3), Distance(2), InnerProduct(5)]), *(st.floats(-6, 6) for _ in range(3)))
    def test_round_trips(self, kind, a, b, c):
        p = ParamSet.build(kind, lam=(a, b, c))
        for q in (
            ParamSet.build(kind, mu=p.mu),
            ParamSet.build(kind, abg=p.abgd[:3]),
            ParamSet.build(kind, exponents=p.exponents),
        ):
            assert all(abs(x - y) < 1e-9 for x, y in zip(q.lam, p.lam))

    def test_inconsistent(self):
        with pytest.raises(ParameterError):
            ParamSet.build(Symplectic(1), lam=(-5, -5, -5), mu=(0, 0, 0))
        with pytest.raises(ParameterError):
            ParamSet.build(Symplectic(1), abg=(1, 1, 1), delta=4)
        with pytest.raises(ParameterError):
            ParamSet.build(Symplectic(1))
        with pytest.raises(ParameterError):
            ParamSet.build(Symplectic(1), nu=(0, 0, 0))

    def test_convert_fills(self):
        p = param_convert(ParamSet(Distance(1), mu=(-3, -3, -3)))
        assert p.complete
