import math

import numpy as np
import pytest

from error_messages import DomainError, QuadratureError, TailBoundError
from ptrig import sinc_p
from quad import QuadResult, integrate, integrate_to_infinity, phi_tail_bound, tail_bound


class TestIntegrate:
    def test_smooth_integrand(self):
        result = integrate(np.sin, 0.0, math.pi, 1e-12)
        assert result.value == pytest.approx(2, abs=1e-12)
        assert result.converged
        assert result.err_est <= 1e-12

    def test_kink_on_breakpoint(self):
        result = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, 1e-13, breakpoints=[0.3])
        assert result.value == pytest.approx(0.3**2 / 2 + 0.7**2 / 2, abs=1e-13)
        assert result.subdivisions == 2

    def test_endpoint_singularities_with_smoothing(self):
        result = integrate(lambda x: 1 / np.sqrt(x * (1 - x)), 0.0, 1.0, 1e-11, smooth_ends=True)
        assert result.value == pytest.approx(math.pi, abs=1e-10)
        assert result.converged

    def test_smoothing_keeps_breakpoints(self):
        result = integrate(
            lambda x: np.abs(x - 0.25) / np.sqrt(x), 0.0, 1.0, 1e-11, breakpoints=[0.25], smooth_ends=True
        )
        assert result.value == pytest.approx(0.5, abs=1e-10)

    def test_subdivision_cap_reports_non_convergence(self):
        result = integrate(lambda x: np.where(x < 1 / 3, 0.0, 1.0), 0.0, 1.0, 1e-15, limit=8)
        assert not result.converged
        assert result.value == pytest.approx(2 / 3, abs=0.1)

    @pytest.mark.parametrize("degree", range(30))
    def test_polynomials(self, degree: int):
        exact = (2.0 ** (degree + 1) - (-1.0) ** (degree + 1)) / (degree + 1)
        result = integrate(lambda x: x**degree, -1.0, 2.0, 1e-13 * exact)
        assert result.value == pytest.approx(exact, rel=1e-13)
        if degree <= 13:
            assert result.subdivisions == 1

    def test_error_estimate_bounds_the_error(self):
        failures = 0
        for f, a, b, exact in CLOSED_FORMS:
            result = integrate(f, a, b, 1e-6)
            assert result.converged
            failures += abs(result.value - exact) > result.err_est
        assert len(CLOSED_FORMS) == 20
        assert failures <= 1

    def test_deterministic(self):
        first = integrate(lambda x: np.exp(-(x**2)), -3.0, 5.0, 1e-12)
        second = integrate(lambda x: np.exp(-(x**2)), -3.0, 5.0, 1e-12)
        assert first == second

    def test_non_finite_integrand(self):
        with pytest.raises(QuadratureError):
            integrate(lambda x: np.where(x > 0.5, np.nan, 1.0), 0.0, 1.0, 1e-9)

    @pytest.mark.parametrize(("a", "b", "tol"), [(1.0, 0.0, 1e-9), (0.0, math.inf, 1e-9), (0.0, 1.0, 0.0)])
    def test_rejects_bad_arguments(self, a: float, b: float, tol: float):
        with pytest.raises(DomainError):
            integrate(np.cos, a, b, tol)


class TestQuadResult:
    def test_total_error(self):
        result = QuadResult(1.0, 1e-10, 3, tail_remainder=2e-10)
        assert result.total_error == pytest.approx(3e-10)
        assert result.to_dict()["subdivisions"] == 3

    def test_rejects_non_finite_value(self):
        with pytest.raises(QuadratureError):
            QuadResult(math.nan, 0.0, 1)

    def test_rejects_negative_error(self):
        with pytest.raises(QuadratureError):
            QuadResult(1.0, -1.0, 1)


class TestIntegrateToInfinity:
    def test_exponential(self):
        result = integrate_to_infinity(lambda x: np.exp(-x), 0.0, 1e-12, lambda alpha: math.exp(-alpha))
        assert result.value == pytest.approx(1, abs=1e-12)
        assert 0 < result.tail_remainder < 5e-13

    def test_truncation_points_follow_the_period(self):
        seen: list[float] = []

        def tail(alpha: float):
            seen.append(alpha)
            return alpha**-4

        integrate_to_infinity(lambda x: 4 / (1 + x) ** 5, 1.0, 1e-6, tail, period=3.0)
        assert seen[:3] == [4.0, 7.0, 13.0]

    def test_tail_bound_never_small_enough(self):
        with pytest.raises(TailBoundError):
            integrate_to_infinity(lambda x: 1 / (1 + x) ** 2, 0.0, 1e-9, lambda _: 1.0, max_doublings=3)

    def test_fold_takes_over_the_far_tail(self):
        def fold(alpha: float, tol: float):
            return QuadResult(1 / (1 + alpha), tol / 10, 1)

        result = integrate_to_infinity(
            lambda x: 1 / (1 + x) ** 2, 0.0, 1e-10, lambda alpha: 1 / (1 + alpha), max_doublings=4, fold=fold
        )
        assert result.value == pytest.approx(1, abs=1e-10)

    def test_breakpoint_spacing(self):
        result = integrate_to_infinity(
            lambda x: np.abs(np.sin(x)) * np.exp(-x),
            0.0,
            1e-12,
            lambda alpha: math.exp(-alpha),
            period=math.pi,
            breakpoint_spacing=math.pi,
        )
        expected = (1 + math.exp(-math.pi)) / (2 * (1 - math.exp(-math.pi)))
        assert result.value == pytest.approx(expected, abs=1e-11)


class TestTailBounds:
    def test_large_alpha_branch(self):
        assert tail_bound(2, 2.0, 5.0).bound == pytest.approx(2.0**-4 / 4)

    def test_small_alpha_branch(self):
        expected = sinc_p(3, 0.5) ** 10 * 0.5 + 1 / 9
        assert tail_bound(3, 0.5, 10.0).bound == pytest.approx(expected, rel=1e-15)

    def test_branches_agree_at_one(self):
        assert tail_bound(2, 1.0, 4.0).bound == pytest.approx(1 / 3)

    @pytest.mark.parametrize(("alpha", "q"), [(0.0, 5.0), (-1.0, 5.0), (1.0, 1.0)])
    def test_rejects_bad_arguments(self, alpha: float, q: float):
        with pytest.raises(DomainError):
            tail_bound(2, alpha, q)

    def test_log_weighted_bound_reduces_to_power_bound(self):
        assert phi_tail_bound(3.0, 0, 5.0) == pytest.approx(3.0**-4 / 4, rel=1e-13)

    def test_log_weighted_bound_below_threshold(self):
        assert phi_tail_bound(0.5, 1, 5.0) == math.inf
        assert phi_tail_bound(1.1, 3, 2.0) == math.inf

    def test_log_weighted_bound_dominates_integral(self):
        alpha, n, q = 10.0, 2, 4.0
        exact = integrate_to_infinity(
            lambda x: np.log(x) ** n * x**-q,
            alpha,
            1e-10,
            lambda a: phi_tail_bound(a, n, q),
            period=alpha,
            max_doublings=16,
        )
        assert exact.value == pytest.approx(phi_tail_bound(alpha, n, q), rel=1e-7)


CLOSED_FORMS = (
    (np.exp, 0.0, 1.0, math.e - 1),
    (np.sin, 0.0, math.pi, 2.0),
    (np.cos, 0.0, math.pi / 2, 1.0),
    (lambda x: 1 / (1 + x**2), 0.0, 1.0, math.pi / 4),
    (np.sqrt, 0.0, 1.0, 2 / 3),
    (np.log, 1.0, math.e, 1.0),
    (lambda x: 1 / x, 1.0, 2.0, math.log(2)),
    (lambda x: x * np.exp(-x), 0.0, 10.0, 1 - 11 * math.exp(-10)),
    (lambda x: np.exp(-(x**2)), 0.0, 3.0, math.sqrt(math.pi) / 2 * math.erf(3)),
    (lambda x: 1 / (2 + np.cos(x)), 0.0, 2 * math.pi, 2 * math.pi / math.sqrt(3)),
    (lambda x: np.sin(x) ** 2, 0.0, math.pi, math.pi / 2),
    (lambda x: x**1.5, 0.0, 1.0, 0.4),
    (np.cosh, -1.0, 1.0, 2 * math.sinh(1)),
    (lambda x: 1 / (1 + x**4), 0.0, 1.0, (math.pi + 2 * math.log(1 + math.sqrt(2))) / (4 * math.sqrt(2))),
    (lambda x: np.exp(x) * np.cos(x), 0.0, math.pi / 2, (math.exp(math.pi / 2) - 1) / 2),
    (lambda x: x**3 - 2 * x, -2.0, 3.0, 11.25),
    (lambda x: 1 / (x**2 + 0.01), -1.0, 1.0, 20 * math.atan(10)),
    (lambda x: np.sin(10 * x), 0.0, 1.0, (1 - math.cos(10)) / 10),
    (lambda x: np.sqrt(1 - x**2), -1.0, 1.0, math.pi / 2),
    (np.log1p, 0.0, 1.0, 2 * math.log(2) - 1),
)
"""(integrand, a, b, exact value)"""
