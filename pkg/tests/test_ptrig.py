import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from error_messages import DomainError, PoleError
from ptrig import (
    PExponent,
    arcsin_excess,
    arcsin_p,
    arcsin_p_signed,
    cos_p,
    log_abs_sinc,
    pi_p,
    sin_cos_p,
    sin_p,
    sinc_deficit,
    sinc_deficit_ratio,
    sinc_p,
    tan_p,
)

exponents = st.floats(min_value=1.1, max_value=50.0, allow_nan=False)


class TestPiP:
    def test_classical_value(self):
        assert pi_p(2) == pytest.approx(math.pi, rel=1e-15)

    def test_closed_form(self):
        for p in (1.5, 3.0, 10.0):
            assert pi_p(p) == pytest.approx(2 * math.pi / (p * math.sin(math.pi / p)), rel=1e-14)

    def test_golden_values(self):
        assert pi_p(1.5) == pytest.approx(4.836798304624581, rel=1e-13)
        assert 2 < pi_p(1e6) < 2.00001

    def test_decreasing_towards_two(self):
        values = [pi_p(p) for p in (1.01, 1.1, 1.5, 2, 3, 10, 100)]
        assert all(a > b for a, b in zip(values, values[1:], strict=False))
        assert values[-1] > 2
        assert values[-1] == pytest.approx(2, abs=1e-3)

    @pytest.mark.parametrize("p", [1.0, 0.5, -2.0, math.inf, math.nan])
    def test_rejects_invalid_exponent(self, p: float):
        with pytest.raises(DomainError):
            pi_p(p)

    def test_accepts_exponent_objects(self):
        exponent = PExponent(3)
        assert pi_p(exponent) == exponent.pi_p
        assert exponent.half_pi_p == exponent.pi_p / 2


class TestArcsin:
    def test_matches_classical_arcsine(self):
        y = np.linspace(0, 1, 101)
        np.testing.assert_allclose(arcsin_p(2, y), np.arcsin(y), rtol=1e-14, atol=1e-15)

    def test_endpoints(self):
        for p in (1.1, 2, 7.5):
            assert arcsin_p(p, 0.0) == 0
            assert arcsin_p(p, 1.0) == pytest.approx(pi_p(p) / 2, rel=1e-14)

    def test_scalar_in_scalar_out(self):
        assert isinstance(arcsin_p(3, 0.5), float)
        assert isinstance(arcsin_p(3, [0.5]), np.ndarray)

    @pytest.mark.parametrize("y", [-0.1, 1.0000001, math.nan])
    def test_rejects_outside_unit_interval(self, y: float):
        with pytest.raises(DomainError):
            arcsin_p(2, y)

    def test_signed_extension_is_odd(self):
        y = np.linspace(-1, 1, 41)
        np.testing.assert_allclose(arcsin_p_signed(3, y), -arcsin_p_signed(3, -y), atol=0)

    def test_excess_matches_direct_difference(self):
        y = np.array([0.3, 0.5, 0.6])
        direct = arcsin_p(3, y) / y - 1
        np.testing.assert_allclose(arcsin_excess(3, y), direct, rtol=1e-12)

    def test_excess_is_positive_where_the_difference_rounds_away(self):
        assert arcsin_excess(10, 1e-3) > 0
        assert arcsin_p(10, 1e-3) / 1e-3 - 1 == 0


class TestSinCos:
    def test_classical_sine_and_cosine(self):
        x = np.linspace(-10, 10, 401)
        np.testing.assert_allclose(sin_p(2, x), np.sin(x), atol=5e-15)
        np.testing.assert_allclose(cos_p(2, x), np.cos(x), atol=5e-15)

    def test_golden_value(self):
        assert sin_p(2, 1.0) == pytest.approx(0.8414709848078965, rel=1e-15)

    def test_quarter_period(self):
        for p in (1.5, 2, 4):
            half = pi_p(p) / 2
            assert sin_p(p, half) == 1
            assert cos_p(p, half) == 0
            assert sin_p(p, 0.0) == 0
            assert cos_p(p, 0.0) == 1

    def test_cosine_accurate_near_quarter_period(self):
        x = math.pi / 2 - 1e-10
        assert cos_p(2, x) == pytest.approx(math.cos(x), rel=1e-6)

    def test_sin_cos_pair(self):
        sine, cosine = sin_cos_p(3, [0.2, 1.0])
        np.testing.assert_array_equal(sine, sin_p(3, [0.2, 1.0]))
        np.testing.assert_array_equal(cosine, cos_p(3, [0.2, 1.0]))

    def test_tangent(self):
        assert tan_p(2, 0.5) == pytest.approx(math.tan(0.5), rel=1e-14)

    @pytest.mark.parametrize("p", [1.5, 2, 3, 10])
    def test_cosine_is_the_derivative_of_sine(self, p: float):
        h = 1e-5
        x = np.linspace(0.1, 0.8 * pi_p(p) / 2, 40)
        derivative = (sin_p(p, x + h) - sin_p(p, x - h)) / (2 * h)
        np.testing.assert_allclose(cos_p(p, x), derivative, atol=1e-6)

    @pytest.mark.parametrize("p", [1.5, 2, 3, 10])
    def test_tangent_derivative(self, p: float):
        h = 1e-5
        x = np.linspace(0.1, 0.7 * pi_p(p) / 2, 40)
        derivative = (tan_p(p, x + h) - tan_p(p, x - h)) / (2 * h)
        np.testing.assert_allclose(derivative, 1 + np.abs(tan_p(p, x)) ** p, rtol=1e-6)

    def test_tangent_pole(self):
        with pytest.raises(PoleError):
            tan_p(2, pi_p(2) / 2)

    def test_pole_is_a_domain_error(self):
        with pytest.raises(DomainError):
            tan_p(3, -pi_p(3) / 2)

    def test_rejects_non_finite_angle(self):
        with pytest.raises(DomainError):
            sin_p(2, math.inf)

    @given(p=exponents, x=st.floats(min_value=-20.0, max_value=20.0))
    @settings(max_examples=200, deadline=None)
    def test_pythagorean_identity(self, p: float, x: float):
        assert abs(sin_p(p, x)) ** p + abs(cos_p(p, x)) ** p == pytest.approx(1, abs=1e-12)

    @given(p=exponents, x=st.floats(min_value=0.0, max_value=20.0))
    @settings(max_examples=200, deadline=None)
    def test_odd(self, p: float, x: float):
        assert sin_p(p, -x) == -sin_p(p, x)

    @given(p=exponents, fraction=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_reflection_about_quarter_period(self, p: float, fraction: float):
        half = pi_p(p) / 2
        offset = fraction * half
        tolerance = max(1e-14, 8 * np.finfo(np.float64).eps * pi_p(p))
        assert sin_p(p, half - offset) == pytest.approx(sin_p(p, half + offset), abs=tolerance)

    @given(p=exponents, x=st.floats(min_value=-10.0, max_value=10.0))
    @settings(max_examples=200, deadline=None)
    def test_periodic(self, p: float, x: float):
        assert sin_p(p, x + 2 * pi_p(p)) == pytest.approx(sin_p(p, x), abs=1e-12)

    @given(p=exponents, y=st.floats(min_value=0.0, max_value=1 - 1e-9))
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, p: float, y: float):
        assert sin_p(p, arcsin_p(p, y)) == pytest.approx(y, abs=1e-12)


class TestSinc:
    @pytest.mark.parametrize("p", [1.5, 2, 3])
    def test_value_at_zero(self, p: float):
        assert sinc_p(p, 0.0) == 1
        assert sinc_deficit(p, 0.0) == 0

    def test_classical_sinc(self):
        x = np.linspace(0.01, 30, 300)
        np.testing.assert_allclose(sinc_p(2, x), np.sin(x) / x, atol=1e-15)

    def test_even(self):
        x = np.linspace(0, 12, 50)
        np.testing.assert_array_equal(sinc_p(3, x), sinc_p(3, -x))

    def test_roots(self):
        for k in (1, 2, 5):
            assert sinc_p(2, k * pi_p(2)) == pytest.approx(0, abs=1e-15)

    def test_deficit_matches_leading_coefficient(self):
        exponent = PExponent(10)
        a1, _ = exponent.sinc_coefficients
        x = 1e-3
        assert sinc_deficit(exponent, x) == pytest.approx(-a1 * x**10, rel=1e-12)
        assert sinc_deficit(exponent, x) > 0

    def test_deficit_consistent_with_sinc(self):
        x = np.linspace(0.05, 1.5, 30)
        np.testing.assert_allclose(sinc_deficit(2, x), 1 - sinc_p(2, x), atol=1e-15)

    def test_log_abs_sinc(self):
        x = np.array([0.5, 2.0, 4.0])
        np.testing.assert_allclose(log_abs_sinc(2, x), np.log(np.abs(np.sin(x) / x)), rtol=1e-13)
        assert log_abs_sinc(2, 0.0) == 0
        assert log_abs_sinc(2, pi_p(2)) < -30

    @pytest.mark.parametrize("p", [1.5, 2, 3, 10])
    def test_series_and_direct_branches_agree(self, p: float):
        below = sinc_p(p, np.nextafter(1e-4, 0))
        at = sinc_p(p, 1e-4)
        assert abs(below - at) <= 1e-13

    def test_deficit_ratio_times_power_is_the_deficit(self):
        x = np.array([0.0, 1e-5, 1e-3, 0.3, 0.9, 1.2, 1.5, 4.0])
        np.testing.assert_allclose(sinc_deficit_ratio(3, x) * x**3, sinc_deficit(3, x), rtol=1e-12, atol=0)
        a1, _ = PExponent(3).sinc_coefficients
        assert sinc_deficit_ratio(3, 0.0) == -a1

    def test_deficit_ratio_keeps_its_sign_at_large_exponents(self):
        x = np.linspace(0.01, 0.9, 50)
        assert np.any(sinc_deficit(200, x) == 0)
        assert np.all(sinc_deficit_ratio(200, x) > 0)
        a1, _ = PExponent(200).sinc_coefficients
        assert sinc_deficit_ratio(200, 0.01) == pytest.approx(-a1, rel=1e-12)
