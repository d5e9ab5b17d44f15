import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphtriple.hyper import (
    HyperParams,
    dougall_params,
    dougall_rhs,
    is_well_poised,
    pfq,
    richardson_sum,
    whipple_3f2_params,
    whipple_lhs_params,
    whipple_rhs,
)
from sphtriple.specfun import DomainError

from conftest import rel_err


def mp_hyper(params):
    up = [mpmath.mpc(a.real, a.imag) for a in params.upper]
    lo = [mpmath.mpc(b.real, b.imag) for b in params.lower]
    z = params.argument
    return complex(mpmath.hyper(up, lo, mpmath.mpc(z.real, z.imag)))


class TestPfq:
    def test_log2(self):
        # 2F1(1, 1; 2; -1) = ln 2
        r = pfq(HyperParams((1, 1), (2,), -1.0))
        assert r.method == "richardson"
        assert rel_err(r.value, math.log(2)) < 1e-12

    def test_gauss_sum_at_one(self):
        a, b, c = 0.3, -0.4 + 0.2j, 1.7
        expected = complex(mpmath.gamma(c) * mpmath.gamma(c - a - b) / (mpmath.gamma(c - a) * mpmath.gamma(c - b)))
        assert rel_err(pfq(HyperParams((a, b), (c,), 1.0)).value, expected) < 1e-10

    def test_exponential(self):
        r = pfq(HyperParams((), (), 2.5))
        assert r.method == "direct" and r.converged
        assert rel_err(r.value, math.exp(2.5)) < 1e-14

    def test_terminating_is_exact_sum(self):
        # 2F1(-3, b; c; 1) by Chu-Vandermonde: (c-b)_3 / (c)_3
        b, c = 1.25, 3.5
        r = pfq(HyperParams((-3, b), (c,), 1.0))
        assert r.method == "terminating" and r.terms_used == 4
        expected = (c - b) * (c - b + 1) * (c - b + 2) / (c * (c + 1) * (c + 2))
        assert rel_err(r.value, expected) < 1e-14

    def test_zero_argument(self):
        assert pfq(HyperParams((2, 3), (4,), 0.0)).value == 1

    @pytest.mark.parametrize("z", [0.3, -0.7, 0.5 + 0.5j, -0.95j])
    def test_inside_disc_matches_mpmath(self, z):
        params = HyperParams((0.5, 1.25, -0.3 + 0.1j), (2.5, 1.75), z)
        assert rel_err(pfq(params).value, mp_hyper(params)) < 1e-12

    @pytest.mark.parametrize("z", [1.0, -1.0])
    def test_unit_circle_matches_mpmath(self, z):
        params = HyperParams((0.5, 1.25, -0.3), (2.5, 1.75), z)
        assert rel_err(pfq(params).value, mp_hyper(params)) < 1e-11

    def test_alternating_slowly_convergent(self):
        # excess -0.5 at z = -1 still converges (conditionally)
        params = HyperParams((1.0, 1.5), (2.0,), -1.0)
        assert rel_err(pfq(params).value, mp_hyper(params)) < 1e-10

    def test_lower_pole_before_termination(self):
        with pytest.raises(DomainError):
            pfq(HyperParams((-5, 1), (-2,), 0.5))

    def test_lower_pole_after_termination_is_fine(self):
        r = pfq(HyperParams((-2, 1), (-4,), 0.5))
        assert rel_err(r.value, 1 + (-2 * 1 / -4) * 0.5 + (-2 * -1 * 1 * 2) / (-4 * -3) * 0.25 / 2) < 1e-15

    def test_too_many_upper(self):
        with pytest.raises(DomainError):
            pfq(HyperParams((1, 2, 3), (4,), 0.1))

    def test_outside_disc(self):
        with pytest.raises(DomainError):
            pfq(HyperParams((1, 2), (4,), 1.5))

    def test_divergent_at_one(self):
        with pytest.raises(DomainError):
            pfq(HyperParams((1, 2), (3,), 1.0))

    def test_other_unit_circle_points(self):
        with pytest.raises(DomainError):
            pfq(HyperParams((1, 0.5), (3,), 1j))

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            pfq(HyperParams((1,), (2,), 0.5), rel_tol=0)

    def test_budget_exhaustion_reported(self):
        r = pfq(HyperParams((1, 1), (2,), 0.999), max_terms=10)
        assert not r.converged and r.terms_used <= 10

    @given(st.floats(-0.9, 0.9), st.floats(0.1, 3), st.floats(-2, 2), st.floats(0.5, 4))
    def test_property_against_mpmath(self, z, a, b, c):
        params = HyperParams((a, b), (c,), z)
        assert rel_err(pfq(params).value, mp_hyper(params)) < 1e-11


def test_richardson_on_zeta2():
    # partial sums of 1/l^2 have tail ~ 1/L
    def partial(L):
        return complex(math.fsum(1.0 / k**2 for k in range(1, L + 1)))

    r = richardson_sum(partial, 1.0, 1e-13, 100_000, 16)
    assert rel_err(r.value, math.pi**2 / 6) < 1e-12


class TestWellPoised:
    def test_dougall_is_well_poised(self):
        assert is_well_poised(dougall_params(2.3, -0.2, 0.1, -0.4))

    def test_whipple_lhs_is_well_poised(self):
        assert is_well_poised(whipple_lhs_params(1.5, 0.2, 0.3, 0.4, 0.1))

    def test_generic_is_not(self):
        assert not is_well_poised(HyperParams((1, 2, 3), (4, 5), 1.0))

    def test_shape_check(self):
        with pytest.raises(ValueError):
            is_well_poised(HyperParams((1, 2), (4, 5), 1.0))


class TestDougall:
    def test_pi_squared_over_eight(self):
        assert rel_err(dougall_rhs(2, -0.5, -0.5, -0.5).value, math.pi**2 / 8) < 1e-14
        assert rel_err(pfq(dougall_params(2, -0.5, -0.5, -0.5)).value, math.pi**2 / 8) < 1e-10

    def test_m_equal_one_truncates(self):
        # 0/0 pair at m = 1: the literal series stops at l = 0
        assert pfq(dougall_params(1.0, -0.25, -0.25, -0.125)).value == 1

    def test_terminating_case(self):
        # x = 2 makes -x a nonpositive integer
        args = (1.7, 2, -0.3, 0.45)
        r = pfq(dougall_params(*args))
        assert r.method == "terminating"
        assert rel_err(r.value, dougall_rhs(*args).value) < 1e-13

    @given(st.floats(1.05, 3), st.floats(-0.9, -0.1), st.floats(-0.9, -0.1), st.floats(-0.9, -0.1))
    def test_property(self, m, x, y, z):
        if 2 * (m + x + y + z) <= 0.5:
            return
        assert rel_err(pfq(dougall_params(m, x, y, z)).value, dougall_rhs(m, x, y, z).value) < 1e-8


class TestWhipple:
    def test_known_point_mpmath(self):
        args = (1.3, 0.2, 0.4, -0.1, 0.6)
        lhs = mp_hyper(whipple_lhs_params(*args))
        assert rel_err(whipple_rhs(*args).value, lhs) < 1e-11

    def test_zero_prefactor(self):
        # 1 + a - d - e = 0 puts Gamma(0) in the denominator
        r = whipple_rhs(1.0, 0.2, 0.3, 1.25, 0.75)
        assert r.value == 0

    def test_3f2_is_balanced_side(self):
        p = whipple_3f2_params(1.3, 0.2, 0.4, -0.1, 0.6)
        assert len(p.upper) == 3 and p.argument == 1

    @given(st.floats(0.5, 3), *(st.floats(-0.5, 1) for _ in range(4)))
    def test_property(self, a, b, c, d, e):
        lhs = whipple_lhs_params(a, b, c, d, e)
        if lhs.excess.real + 1 <= 1.5 or 1 + a - d - e <= 0.5:
            return
        assert rel_err(pfq(lhs).value, whipple_rhs(a, b, c, d, e).value) < 1e-8
