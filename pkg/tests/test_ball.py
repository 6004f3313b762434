import math

import numpy as np
import pytest

from ball import (
    BallIntegral,
    Check,
    Suite,
    _report,
    ball_integral,
    ball_limit_table,
    full_line_constant_check,
    gamma_ratio,
    limit_value,
    phi,
    phi_limit_check,
    phi_quad,
    phi_taylor_sum,
    verify_all,
    verify_beta_identities,
    verify_bhayo,
    verify_full_line,
    verify_gamma_ratio,
    verify_gamma_ratio_pairs,
    verify_jordan,
    verify_pythagorean,
    verify_sinc_bounded,
    verify_sinc_monotone,
    verify_suite,
    verify_symmetry,
    verify_tail_bounds,
)
from error_messages import DomainError, QuadratureError
from ptrig import PExponent
from quad import QuadResult
from series import leading_coefficients

SAMPLED_SUITES = (verify_jordan, verify_sinc_bounded, verify_sinc_monotone, verify_bhayo, verify_pythagorean)


class TestIntegrals:
    def test_limit_value(self):
        assert limit_value(2) == pytest.approx(math.sqrt(3 * math.pi / 2), rel=1e-15)
        assert limit_value(1.5) == pytest.approx(2.1791, abs=1e-3)

    def test_square_of_sinc(self):
        integral = ball_integral(2, 2.0, 1e-11)
        assert integral.value == pytest.approx(math.pi / math.sqrt(2), abs=1e-10)
        assert integral.raw == pytest.approx(math.pi / 2, abs=1e-11)
        assert integral.quad.converged
        assert integral.quad.total_error <= 1e-11

    def test_phi_without_log_weight(self):
        assert phi(2, 0, 2.0) == pytest.approx(math.pi / 2, abs=1e-9)

    def test_log_weight_makes_odd_orders_negative(self):
        assert phi(2, 1, 10.0) < 0
        assert phi(3, 2, 10.0) > 0

    def test_log_weight_is_the_derivative_in_q(self):
        q, h = 100.0, 0.01
        derivative = (phi(2, 0, q + h, 1e-12) - phi(2, 0, q - h, 1e-12)) / (2 * h)
        assert phi(2, 1, q, 1e-12) == pytest.approx(derivative, rel=1e-4)

    def test_large_q_uses_exponential_form(self):
        integral = ball_integral(3, 500.0)
        assert integral.value == pytest.approx(limit_value(3), rel=5e-3)

    @pytest.mark.parametrize("n", [-1, 1.5, True])
    def test_phi_rejects_bad_order(self, n: int):
        with pytest.raises(DomainError):
            phi_quad(2, n, 10.0)

    @pytest.mark.parametrize("q", [1.0, 0.5, math.nan])
    def test_rejects_q_at_most_one(self, q: float):
        with pytest.raises(DomainError):
            ball_integral(2, q)

    def test_result_must_be_positive(self):
        with pytest.raises(QuadratureError):
            BallIntegral(PExponent(2), 2.0, 0.0, 0.0, QuadResult(0.0, 0.0, 1))

    def test_to_dict(self):
        record = ball_integral(2, 4.0).to_dict()
        assert record["p"] == 2
        assert record["q"] == 4
        assert "err_est" in record

    @pytest.mark.slow
    def test_taylor_series_in_the_exponent(self):
        for z in (1.0, -1.0):
            expected = phi(2, 0, 10.0 - z, 1e-12)
            assert phi_taylor_sum(2, 10.0, z, 12) == pytest.approx(expected, abs=1e-6)


class TestLimits:
    def test_limit_table_rows(self):
        rows, converged, worst_error = ball_limit_table(2, [10.0, 100.0])
        assert converged
        assert [row["q"] for row in rows] == [10.0, 100.0]
        assert 0 < worst_error <= 1e-9
        assert rows[0]["limit"] == limit_value(2)
        assert rows[1]["gap"] < rows[0]["gap"]

    @pytest.mark.slow
    def test_approaches_limit_at_two(self):
        rows, converged, _ = ball_limit_table(2, [10.0, 100.0, 1000.0, 10000.0])
        assert converged
        gaps = [row["gap"] for row in rows]
        assert all(a > b for a, b in zip(gaps, gaps[1:], strict=False))
        assert gaps[-1] < 3e-3

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [1.5, 3, 5])
    def test_approaches_limit(self, p: float):
        rows, _, _ = ball_limit_table(p, [10000.0])
        assert rows[0]["gap"] < 5e-3

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [1.5, 2, 3])
    def test_scaled_gap_matches_first_correction(self, p: float):
        rows, _, _ = ball_limit_table(p, [1000.0])
        _, g1 = leading_coefficients(p)
        assert rows[0]["scaled_gap"] == pytest.approx(abs(g1), rel=0.1)

    def test_phi_limit_without_log_weight(self):
        report = phi_limit_check(2, 0, [10.0, 100.0, 1000.0])
        assert report.converged
        assert report.derivative_constant == pytest.approx(limit_value(2), rel=1e-14)
        assert report.approaches == "derivative"

    def test_phi_limit_with_log_weight(self):
        report = phi_limit_check(2, 2, [10.0, 100.0, 1000.0])
        assert all(value > 0 for value in report.scaled)
        assert report.printed_constant == pytest.approx(report.derivative_constant * math.sqrt(math.pi))

    def test_phi_limit_rejects_unsorted_q(self):
        with pytest.raises(DomainError):
            phi_limit_check(2, 1, [100.0, 10.0])

    def test_full_line_constant(self):
        rows = full_line_constant_check([100.0, 1000.0])
        assert all(row["closer_to"] == "full_line_constant" for row in rows)
        assert rows[0]["full_line_constant"] == pytest.approx(2 * math.sqrt(3 * math.pi / 2))


class TestReport:
    def test_non_strict_allows_equality(self):
        report = _report("demo", "grid", [Check("c", np.array([1.0, 2.0]), np.array([0.0, 1.0]), strict=False)])
        assert report.passed
        assert report.max_slack == 0
        assert report.near_violations == 1

    def test_strict_rejects_equality(self):
        report = _report("demo", "grid", [Check("c", np.array([1.0, 2.0]), np.array([1.0, 0.0]))])
        assert not report.passed
        assert report.violations[0].index == 1
        assert report.violations[0].location == 2

    def test_non_finite_margin_fails(self):
        report = _report("demo", "grid", [Check("c", np.array([1.0, 2.0]), np.array([1.0, math.nan]))])
        assert report.max_slack == -math.inf
        assert not report.passed

    def test_row(self):
        report = _report("demo", "grid", [Check("c", np.zeros(3), np.ones(3))])
        assert report.to_row() == {
            "suite": "demo",
            "checked": 3,
            "max_slack": 1.0,
            "violations": 0,
            "near_violations": 0,
            "status": "pass",
        }


class TestSuites:
    @pytest.mark.parametrize("p", [1.1, 1.5, 2, 3, 10])
    @pytest.mark.parametrize("suite", SAMPLED_SUITES)
    def test_sampled_suites_pass(self, suite, p: float):
        report = suite(p, 200)
        assert report.passed, report.violations[:5]
        assert report.checked > 0

    @pytest.mark.parametrize("p", [1.1, 2, 10])
    def test_symmetry(self, p: float):
        assert verify_symmetry(p, 200).passed

    def test_jordan_equality_at_quarter_period(self):
        report = verify_jordan(2, 100)
        assert report.passed
        assert report.max_slack == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("suite", [verify_jordan, verify_pythagorean])
    def test_large_exponent(self, suite):
        assert suite(50, 200).passed

    @pytest.mark.parametrize("suite", [verify_jordan, verify_sinc_monotone, verify_sinc_bounded])
    def test_sinc_suites_where_the_deficit_underflows(self, suite):
        report = suite(200, 1000)
        assert report.passed, report.violations[:5]

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [1.1, 1.5, 2, 3, 10])
    @pytest.mark.parametrize("suite", SAMPLED_SUITES)
    def test_dense_grid(self, suite, p: float):
        report = suite(p, 10_000)
        assert report.passed, report.violations[:5]

    def test_gamma_ratio(self):
        assert gamma_ratio(1.0, 0.0, np.array([10.0]))[0] == pytest.approx(1.0)
        assert verify_gamma_ratio(0.0, 0.5, [10.0, 100.0, 1000.0, 10000.0]).passed

    @pytest.mark.parametrize("p", [1.5, 2, 5])
    def test_gamma_ratio_pairs(self, p: float):
        assert verify_gamma_ratio_pairs(p).passed

    def test_gamma_ratio_rejects_unsorted(self):
        with pytest.raises(DomainError):
            verify_gamma_ratio(0.0, 0.5, [100.0, 10.0])

    def test_beta_identities(self):
        report = verify_beta_identities()
        assert report.passed, report.violations

    def test_incomplete_beta_identity(self):
        report = verify_beta_identities(
            finite_grid=[(1.0, 1.0, 2.0), (0.5, 2.0, 1.5)], infinite_grid=[(1.0, 2.0, 1.0, 1.0)]
        )
        assert report.passed, report.violations
        assert report.checked == 5

    def test_beta_identities_reject_divergent_point(self):
        with pytest.raises(DomainError):
            verify_beta_identities(infinite_grid=[(2.0, 1.0, 1.0, 1.0)])

    @pytest.mark.parametrize("p", [1.1, 1.5, 2, 3, 10])
    def test_tail_bounds(self, p: float):
        report = verify_tail_bounds(p)
        assert report.passed, report.violations[:5]
        assert report.checked == 18

    def test_full_line(self):
        report = verify_full_line()
        assert report.passed
        assert report.max_slack < 1e-6

    def test_suite_names(self):
        assert Suite.GAMMA_RATIO == "gamma-ratio"
        assert "full-line" in Suite
        assert "nope" not in Suite

    def test_dispatch(self):
        assert verify_suite("jordan", 2, 50).suite == "jordan"
        with pytest.raises(DomainError):
            verify_suite("all", 2, 50)
        with pytest.raises(DomainError):
            verify_suite("nope", 2, 50)

    def test_verify_all_close_to_one(self):
        reports = verify_all(1.1, 200)
        assert all(report.passed for report in reports), [report.to_row() for report in reports]

    def test_verify_all_skips_full_line_away_from_two(self):
        reports = verify_all(3, 50)
        assert "full-line" not in [report.suite for report in reports]
        assert len(reports) == len(Suite) - 2
        assert all(report.passed for report in reports)

    def test_rejects_no_samples(self):
        with pytest.raises(DomainError):
            verify_jordan(2, 0)
