import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gstf import (GstfError, peetre_bound_check, subexp_triangle_check,
                  subexp_triangle_constant)


class TestPeetre:
    def test_equality_at_eta_equals_xi_zero(self):
        # xi = eta makes the left side 1; the right side is 2^N at xi = eta = 1.
        chk = peetre_bound_check(1.0, 1.0, 3)
        assert chk.lhs == 1.0
        assert chk.rhs == pytest.approx(2.0**3)
        assert chk.holds

    def test_n_zero_is_trivial(self):
        chk = peetre_bound_check(5.0, -7.0, 0)
        assert chk.lhs == chk.rhs == 1.0
        assert chk.holds

    def test_rejects_out_of_range_n(self):
        with pytest.raises(GstfError):
            peetre_bound_check(0.0, 0.0, -1)
        with pytest.raises(GstfError):
            peetre_bound_check(0.0, 0.0, 65)

    @given(xi=st.floats(-1e6, 1e6), eta=st.floats(-1e6, 1e6),
           N=st.integers(0, 64))
    @settings(max_examples=300, deadline=None)
    def test_holds_everywhere(self, xi, eta, N):
        assert peetre_bound_check(xi, eta, N).holds

    def test_adversarial_corner(self):
        # Large opposite-sign arguments stress the 2^N constant.
        for xi, eta in [(1e6, -1e6), (1e-9, 1e6), (3.0, 2.9999999)]:
            assert peetre_bound_check(xi, eta, 64).holds


class TestSubexpTriangle:
    def test_constant_formula(self):
        assert subexp_triangle_constant(1.0) == 2.0
        assert subexp_triangle_constant(0.5) == 3.0
        assert subexp_triangle_constant(2.0) == 2.0  # exponent clamps at 0
        with pytest.raises(GstfError):
            subexp_triangle_constant(0.0)

    def test_concave_exponent_needs_no_doubling(self):
        # p = 1/s <= 1: |a+b|^p <= |a|^p + |b|^p, so C = 2 suffices.
        chk = subexp_triangle_check(1.0, -1.0, 2.0)
        assert chk.C_used == 2.0
        assert chk.lower_holds and chk.upper_holds

    @given(x=st.floats(-1e4, 1e4), y=st.floats(-1e4, 1e4),
           s=st.floats(0.25, 4.0))
    @settings(max_examples=300, deadline=None)
    def test_holds_everywhere(self, x, y, s):
        chk = subexp_triangle_check(x, y, s)
        assert chk.lower_holds and chk.upper_holds

    def test_tight_case_convex_exponent(self):
        # x = 2y, s = 1/2: middle = |y|^2 + |y|^2, outer = 5|y|^2.
        chk = subexp_triangle_check(2.0, 1.0, 0.5)
        assert chk.lower_holds and chk.upper_holds


def test_vectorized_fuzz_no_violations():
    rng = np.random.default_rng(42)
    n = 200_000
    xi = rng.uniform(-1e3, 1e3, n)
    eta = rng.uniform(-1e3, 1e3, n)
    N = rng.integers(0, 65, n)
    log_lhs = -N * np.log1p((xi - eta) ** 2)
    log_rhs = N * (np.log(2.0) - np.log1p(xi**2) + np.log1p(eta**2))
    assert np.all(log_lhs <= log_rhs)
