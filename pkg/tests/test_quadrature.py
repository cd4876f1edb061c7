"""Quadrature checks: analytic values, additivity/linearity, singular endpoints."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udw.quadrature import (
    QuadratureConvergenceError,
    integrate_finite,
    integrate_semi_infinite,
)
from udw.specfun import erf


class TestFinite:
    def test_polynomial(self):
        r = integrate_finite(lambda x: x * x, 0.0, 1.0, 1e-10)
        assert r.value == pytest.approx(1.0 / 3.0, rel=1e-10)
        assert r.error_estimate <= 1e-10 * max(1.0, abs(r.value))

    def test_inverse_sqrt_singularity(self):
        r = integrate_finite(lambda x: x**-0.5, 0.0, 1.0, 1e-8)
        assert r.value == pytest.approx(2.0, rel=1e-8)

    def test_gaussian_against_erf_oracle(self):
        r = integrate_finite(lambda x: math.exp(-x * x), 0.0, 10.0, 1e-12)
        expected = 0.5 * math.sqrt(math.pi) * erf(10.0)
        assert r.value == pytest.approx(expected, rel=1e-12)

    def test_radial_endpoint_powers(self):
        # k^{n - 3/2} endpoint behaviour for n = 1..4: integral over (0,1) is
        # 1 / (n - 1/2)
        for n in range(1, 5):
            p = n - 1.5
            r = integrate_finite(lambda x, p=p: x**p, 0.0, 1.0, 1e-9)
            assert r.value == pytest.approx(1.0 / (n - 0.5), rel=1e-8)

    def test_empty_and_invalid_interval(self):
        assert integrate_finite(lambda x: 1.0, 2.0, 2.0, 1e-9).value == 0.0
        with pytest.raises(ValueError):
            integrate_finite(lambda x: 1.0, 1.0, 0.0, 1e-9)

    def test_break_points_capture_narrow_peak(self):
        # width-1e-3 Gaussian at x = 0.123456 inside (0, 10)
        mu, s = 0.123456, 1e-3
        f = lambda x: math.exp(-((x - mu) / s) ** 2)
        r = integrate_finite(f, 0.0, 10.0, 1e-9, points=[mu - 5 * s, mu, mu + 5 * s])
        assert r.value == pytest.approx(s * math.sqrt(math.pi), rel=1e-8)

    def test_nonconvergence_reports_best_estimate(self):
        with pytest.raises(QuadratureConvergenceError) as exc:
            integrate_finite(lambda x: x**-0.5, 0.0, 1.0, 1e-13, max_panels=8)
        best = exc.value.result
        assert best.value == pytest.approx(2.0, rel=0.1)
        assert best.error_estimate > 0.0

    @settings(max_examples=60, deadline=None)
    @given(c=st.floats(min_value=0.05, max_value=0.95))
    def test_additivity(self, c):
        f = lambda x: math.cos(3.0 * x) + x
        whole = integrate_finite(f, 0.0, 1.0, 1e-10)
        left = integrate_finite(f, 0.0, c, 1e-10)
        right = integrate_finite(f, c, 1.0, 1e-10)
        tol = 3.0 * (whole.error_estimate + left.error_estimate + right.error_estimate)
        assert abs(left.value + right.value - whole.value) <= max(tol, 1e-14)

    @settings(max_examples=40, deadline=None)
    @given(
        alpha=st.floats(min_value=-3.0, max_value=3.0),
        beta=st.floats(min_value=-3.0, max_value=3.0),
    )
    def test_linearity(self, alpha, beta):
        f = lambda x: math.exp(-x)
        g = lambda x: math.sin(x)
        combo = integrate_finite(lambda x: alpha * f(x) + beta * g(x), 0.0, 2.0, 1e-11)
        parts = alpha * integrate_finite(f, 0.0, 2.0, 1e-11).value + beta * (
            integrate_finite(g, 0.0, 2.0, 1e-11).value
        )
        assert combo.value == pytest.approx(parts, abs=1e-9)

    def test_tightening_tolerance_reduces_true_error(self):
        cases = [
            (lambda x: x**-0.5, 0.0, 1.0, 2.0),
            (lambda x: math.exp(-x * x), 0.0, 10.0, 0.5 * math.sqrt(math.pi) * erf(10.0)),
            (lambda x: math.sin(10.0 * x), 0.0, 1.0, (1.0 - math.cos(10.0)) / 10.0),
        ]
        for f, a, b, exact in cases:
            loose = abs(integrate_finite(f, a, b, 1e-6).value - exact)
            tight = abs(integrate_finite(f, a, b, 1e-8).value - exact)
            assert tight <= loose + 1e-15


class TestSemiInfinite:
    def test_exponential(self):
        r = integrate_semi_infinite(lambda x: math.exp(-x), 0.0, 1e-10)
        assert r.value == pytest.approx(1.0, rel=1e-10)

    def test_gaussian_half_moment(self):
        r = integrate_semi_infinite(lambda x: x * math.exp(-x * x), 0.0, 1e-10)
        assert r.value == pytest.approx(0.5, rel=1e-10)

    def test_shifted_gaussian_second_moment_oracle(self):
        # int_0^inf x^2 e^{-(x-3)^2} dx via Gaussian moments:
        # 9.5 * (sqrt(pi)/2) (1 + erf 3) + 1.5 e^{-9}
        a_half = 0.5 * math.sqrt(math.pi) * (1.0 + erf(3.0))
        expected = 9.5 * a_half + 1.5 * math.exp(-9.0)
        r = integrate_semi_infinite(lambda x: x * x * math.exp(-((x - 3.0) ** 2)), 0.0, 1e-9)
        assert r.value == pytest.approx(expected, rel=1e-9)

    def test_nonzero_lower_limit(self):
        r = integrate_semi_infinite(lambda x: math.exp(-x), 2.0, 1e-10)
        assert r.value == pytest.approx(math.exp(-2.0), rel=1e-10)

    def test_break_points(self):
        mu, s = 7.0, 0.01
        f = lambda x: math.exp(-(((x - mu) / s) ** 2))
        r = integrate_semi_infinite(f, 0.0, 1e-9, points=[mu - 6 * s, mu, mu + 6 * s])
        assert r.value == pytest.approx(s * math.sqrt(math.pi), rel=1e-8)
