"""
Ball's integral I_p(q) = q^(1/p)·∫₀^∞ |sinc_p x|^q dx, the log-weighted moments
φ_p(n, q) = ∫₀^∞ (ln|sinc_p x|)^n |sinc_p x|^q dx, their large-q limits, and the
sampled-grid verification suites for the inequalities and identities they rely on.
"""

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import EnumMeta, StrEnum, auto, unique
from typing import override

import numpy as np
from scipy.special import beta, gamma, gammaincc, poch

from error_messages import QuadratureError, invalid_parameter
from ptrig import (
    PExponent,
    arcsin_p,
    as_exponent,
    cos_p,
    log_abs_sinc,
    sin_p,
    sinc_deficit,
    sinc_deficit_ratio,
    sinc_p,
)
from quad import (
    MAX_DOUBLINGS,
    SUBDIVISION_LIMIT,
    QuadResult,
    integrate,
    integrate_to_infinity,
    phi_tail_bound,
    tail_bound,
)
from series import bhayo_margin_series, leading_coefficients
from special_functions import incomplete_beta
from utils import FloatArray, RealFunction, debug_log

BALL_MAX_DOUBLINGS = 6
"""Doublings of the truncation point tried before the far tail is folded onto one period"""
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class BallIntegral:
    p: PExponent
    q: float
    value: float
    """q^(1/p)-scaled integral"""
    raw: float
    quad: QuadResult

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise QuadratureError(f"I_p(q) evaluated to {self.value!r}, expected a positive finite value")

    def to_dict(self):
        return {"p": self.p.p, "q": self.q, "value": self.value, "raw": self.raw, **self.quad.to_dict()}


@dataclass(frozen=True)
class Violation:
    index: int
    check: str
    location: float
    slack: float


@dataclass
class InequalityReport:
    suite: str
    grid: str
    max_slack: float
    """Smallest margin by which the inequality held over the grid"""
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    near_violations: int = 0

    @property
    def passed(self):
        return not self.violations and self.max_slack >= 0

    def to_row(self):
        return {
            "suite": self.suite,
            "checked": self.checked,
            "max_slack": self.max_slack,
            "violations": len(self.violations),
            "near_violations": self.near_violations,
            "status": "pass" if self.passed else "fail",
        }


@dataclass(frozen=True)
class Check:
    """Margins of one inequality over a grid. Non-strict checks allow a zero margin."""

    name: str
    locations: FloatArray
    margins: FloatArray
    strict: bool = True


def _report(suite: str, grid: str, checks: Iterable[Check]):
    violations: list[Violation] = []
    smallest = math.inf
    checked = 0
    near = 0
    for check in checks:
        margins = np.asarray(check.margins, dtype=np.float64)
        locations = np.broadcast_to(np.asarray(check.locations, dtype=np.float64), margins.shape)
        failed = ~(margins > 0) if check.strict else ~(margins >= 0)
        violations.extend(
            Violation(int(i), check.name, float(locations[i]), float(margins[i])) for i in np.flatnonzero(failed)
        )
        finite = margins[np.isfinite(margins)]
        if finite.size:
            smallest = min(smallest, float(finite.min()))
        if finite.size < margins.size:
            smallest = -math.inf
        near += int(np.count_nonzero((margins >= 0) & (margins < NEAR_VIOLATION)))
        checked += margins.size

    violations.sort(key=lambda violation: (violation.index, violation.check))
    report = InequalityReport(suite, grid, smallest, violations, checked, near)
    debug_log(
        f"verify {suite}: {checked} checks, max_slack={smallest:.3g}, "
        + f"{len(violations)} violation(s), {near} near violation(s)"
    )
    return report


def __check_samples(samples: int):
    if samples < 1:
        raise invalid_parameter("samples", samples, "samples >= 1")


# region Integrals


def limit_value(p: PExponent | float) -> float:
    """(1/p)·Γ(1/p)·(p(p+1))^(1/p), the limit of I_p(q) as q → ∞."""
    return leading_coefficients(p)[0]


def _phi_integrand(exponent: PExponent, n: int, q: float) -> RealFunction:
    if n == 0 and q <= EXP_SWITCH_Q:

        def power(x: FloatArray) -> FloatArray:
            return np.abs(sinc_p(exponent, x)) ** q

        return power

    def weighted(x: FloatArray) -> FloatArray:
        log = log_abs_sinc(exponent, x)
        finite = np.isfinite(log)
        safe = np.where(finite, log, 0.0)
        # Zero at the roots, where the log weight is beaten by the power
        return np.where(finite, safe**n * np.exp(q * safe), 0.0)

    return weighted


def _periodic_fold(exponent: PExponent, n: int, q: float) -> Callable[[float, float], QuadResult]:
    """
    ∫_α^∞ for α a multiple of π_p, as one integral over t ∈ (0, π_p) of the sum over periods.

    With c = ln|sin_p t| and L_k = c − ln(kπ_p + t), each period contributes L_k^n·e^(q·L_k). The
    first `FOLD_DIRECT_PERIODS` are summed directly and the rest by Euler-Maclaurin, whose integral
    term is an upper incomplete Gamma function.
    """
    period = exponent.pi_p
    sign = -1.0 if n % 2 else 1.0

    def fold(alpha: float, tol: float):
        start = round(alpha / period)
        k = np.arange(start, start + FOLD_DIRECT_PERIODS, dtype=np.float64)[:, None]
        stop = float(start + FOLD_DIRECT_PERIODS)

        def per_period(t: FloatArray) -> FloatArray:
            with np.errstate(divide="ignore"):
                c = np.log(np.abs(sin_p(exponent, t)))
            c = np.where(np.isfinite(c), c, LOG_FLOOR)
            direct = c[None, :] - np.log(k * period + t[None, :])
            total = np.sum(direct**n * np.exp(q * direct), axis=0)

            x_m = stop * period + t
            log_m = c - np.log(x_m)
            h_m = log_m**n * np.exp(q * log_m)
            slope = q * log_m**n
            if n:
                slope += n * log_m ** (n - 1)
            dh_m = -slope * np.exp(q * log_m) / x_m
            integral = (
                sign
                * np.exp(c)
                * gamma(n + 1)
                * gammaincc(n + 1, (q - 1.0) * (np.log(x_m) - c))
                / (q - 1.0) ** (n + 1)
                / period
            )
            return total + integral + h_m / 2.0 - period * dh_m / 12.0

        result = integrate(per_period, 0.0, period, tol, breakpoints=(period / 2.0,))
        x_far = stop * period + period / 2.0
        far = math.log(x_far) ** n * x_far**-q
        remainder = period * (q + n) ** 3 * (period / x_far) ** 3 * far / 720.0
        debug_log(f"phi fold from {alpha!r}: value={result.value!r}, Euler-Maclaurin remainder ~ {remainder:.3g}")
        return QuadResult(
            value=result.value,
            err_est=result.err_est,
            subdivisions=result.subdivisions,
            tail_remainder=remainder,
            converged=result.converged,
        )

    return fold


def phi_quad(
    p: PExponent | float,
    n: int,
    q: float,
    tol: float = DEFAULT_TOL,
    *,
    max_doublings: int = BALL_MAX_DOUBLINGS,
    limit: int = SUBDIVISION_LIMIT,
):
    """φ_p(n, q) with its error accounting. Panel edges sit on every multiple of π_p/2."""
    exponent = as_exponent(p)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise invalid_parameter("n", n, "integer n >= 0")
    if not q > 1:
        raise invalid_parameter("q", q, "q > 1")
    if not tol > 0:
        raise invalid_parameter("tol", tol, "tol > 0")
    n = int(n)
    q = float(q)

    if n == 0:

        def tail(alpha: float):
            return tail_bound(exponent, alpha, q).bound

    else:

        def tail(alpha: float):
            return phi_tail_bound(alpha, n, q)

    return integrate_to_infinity(
        _phi_integrand(exponent, n, q),
        0.0,
        tol,
        tail,
        period=exponent.pi_p,
        max_doublings=max_doublings,
        breakpoint_spacing=exponent.half_pi_p,
        fold=_periodic_fold(exponent, n, q),
        limit=limit,
    )


def phi(p: PExponent | float, n: int, q: float, tol: float = DEFAULT_TOL) -> float:
    return phi_quad(p, n, q, tol).value


def ball_integral(
    p: PExponent | float,
    q: float,
    tol: float = DEFAULT_TOL,
    *,
    max_doublings: int = BALL_MAX_DOUBLINGS,
    limit: int = SUBDIVISION_LIMIT,
):
    """
    I_p(q). `tol` bounds the absolute error of the unscaled integral.

    @return: The scaled value together with the raw integral and its `QuadResult`.
    """
    exponent = as_exponent(p)
    if not q > 1:
        raise invalid_parameter("q", q, "q > 1")
    result = phi_quad(exponent, 0, q, tol, max_doublings=max_doublings, limit=limit)
    q = float(q)
    return BallIntegral(exponent, q, q ** (1.0 / exponent.p) * result.value, result.value, result)


def ball_limit_table(
    p: PExponent | float,
    q_list: Sequence[float],
    tol: float = DEFAULT_TOL,
    *,
    max_doublings: int = BALL_MAX_DOUBLINGS,
    limit: int = SUBDIVISION_LIMIT,
):
    """
    Rows of I_p(q) against its limit, with the gap scaled by q next to the predicted |g_1|.

    @return: The rows, whether every integral reached `tol`, and the largest total error among them.
    """
    exponent = as_exponent(p)
    limit_constant, g1 = leading_coefficients(exponent)
    rows: list[dict[str, object]] = []
    converged = True
    worst_error = 0.0
    for q in q_list:
        integral = ball_integral(exponent, q, tol, max_doublings=max_doublings, limit=limit)
        converged &= integral.quad.converged and integral.quad.total_error <= tol
        worst_error = max(worst_error, integral.quad.total_error)
        gap = abs(integral.value - limit_constant)
        rows.append({
            "q": q,
            "integral": integral.value,
            "limit": limit_constant,
            "gap": gap,
            "scaled_gap": gap * q,
            "predicted_g1": abs(g1),
        })
    return rows, converged, worst_error


@dataclass(frozen=True)
class PhiLimitReport:
    p: float
    n: int
    q_list: list[float]
    values: list[float]
    scaled: list[float]
    """q^(n + 1/p)·φ_p(n, q)"""
    printed_constant: float
    """(−1)^n (1/p)Γ(1/p)(p(p+1))^(1/p)Γ(n + 1/p)"""
    derivative_constant: float
    """(−1)^n (1/p)(p(p+1))^(1/p)Γ(n + 1/p), from differentiating the I_p asymptote n times"""
    converged: bool

    @property
    def approaches(self):
        last = self.scaled[-1]
        if abs(last - self.derivative_constant) <= abs(last - self.printed_constant):
            return "derivative"
        return "printed"


def phi_limit_check(p: PExponent | float, n: int, q_list: Sequence[float], rtol: float = 1e-9):
    """
    The sequence q^(n + 1/p)·φ_p(n, q) next to both candidate limits.
    Each φ is computed to `rtol` relative to the size the limit predicts for it.
    """
    exponent = as_exponent(p)
    if list(q_list) != sorted(q_list) or not all(q > 1 for q in q_list):
        raise invalid_parameter("q_list", list(q_list), "increasing values > 1")
    if not q_list:
        raise invalid_parameter("q_list", [], "at least one value")
    p_value = exponent.p
    sign = -1.0 if n % 2 else 1.0
    derivative_constant = (
        sign * (p_value * (p_value + 1.0)) ** (1.0 / p_value) * float(gamma(n + 1.0 / p_value)) / p_value
    )
    printed_constant = derivative_constant * float(gamma(1.0 / p_value))
    scale = max(abs(derivative_constant), abs(printed_constant))

    values: list[float] = []
    scaled: list[float] = []
    converged = True
    for q in q_list:
        power = n + 1.0 / p_value
        tol = rtol * scale * q**-power
        result = phi_quad(exponent, n, q, tol)
        converged &= result.converged
        values.append(result.value)
        scaled.append(q**power * result.value)

    return PhiLimitReport(
        p_value, n, list(q_list), values, scaled, printed_constant, derivative_constant, converged
    )


def phi_taylor_sum(p: PExponent | float, q: float, z: float, terms: int, tol: float = 1e-12):
    """Σ_{n ≤ terms} (−1)^n φ_p(n, q)·z^n/n!, which converges to φ_p(0, q − z)."""
    exponent = as_exponent(p)
    return math.fsum(
        (-z) ** n / math.factorial(n) * phi(exponent, n, q, tol) for n in range(terms + 1)
    )


def full_line_constant_check(q_list: Sequence[float] = (10.0, 100.0, 1000.0, 10000.0), tol: float = DEFAULT_TOL):
    """
    √q·∫_{−∞}^{∞} |sin x/x|^q dx at p = 2 against the two normalizations √(3π/2) and 2√(3π/2)
    of the classical limit.
    """
    half_line = limit_value(2.0)
    rows: list[dict[str, object]] = []
    for q in q_list:
        full = 2.0 * ball_integral(2.0, q, tol).value
        rows.append({
            "q": q,
            "full_line": full,
            "half_line_constant": half_line,
            "full_line_constant": 2.0 * half_line,
            "closer_to": "full_line_constant"
            if abs(full - 2.0 * half_line) <= abs(full - half_line)
            else "half_line_constant",
        })
    return rows


# endregion Integrals


# region Verification suites


def verify_jordan(p: PExponent | float, samples: int):
    """2/π_p ≤ sinc_p x < 1 on (0, π_p/2]."""
    exponent = as_exponent(p)
    __check_samples(samples)
    # Ratio first, so the last point is π_p/2 exactly
    x = exponent.half_pi_p * (np.arange(1, samples + 1) / samples)
    lower = sinc_p(exponent, x) - 2.0 / exponent.pi_p
    # (1 − sinc)/x^p keeps its sign where the deficit itself underflows
    upper = sinc_deficit_ratio(exponent, x)
    return _report(
        "jordan",
        f"{samples} uniform points of (0, π_p/2], p = {exponent.p!r}",
        [Check("lower", x, lower, strict=False), Check("upper", x, upper)],
    )


def verify_sinc_bounded(p: PExponent | float, samples: int):
    """|sinc_p x| ≤ 1 over several periods, with equality only at x = 0."""
    exponent = as_exponent(p)
    __check_samples(samples)
    x = BOUNDED_PERIODS * exponent.pi_p * np.arange(1, samples + 1) / samples
    deficit = sinc_deficit(exponent, x)
    sinc = sinc_p(exponent, x)
    positive = np.where(deficit > 0, deficit, sinc_deficit_ratio(exponent, x))
    margin = np.where(sinc < 0, 1.0 + sinc, positive)
    return _report(
        "bounded",
        f"{samples} uniform points of (0, {BOUNDED_PERIODS}π_p], p = {exponent.p!r}",
        [Check("bounded", x, margin)],
    )


def verify_sinc_monotone(p: PExponent | float, samples: int):
    """sinc_p strictly decreasing on (0, π_p/2), and π_p strictly decreasing in p on (1.01, 100)."""
    exponent = as_exponent(p)
    __check_samples(samples)
    x = exponent.half_pi_p * np.arange(1, samples + 1) / (samples + 1)
    log_deficit = np.log(sinc_deficit_ratio(exponent, x)) + exponent.p * np.log(x)
    exponents = np.geomspace(PI_P_GRID[0], PI_P_GRID[1], max(samples, 2))
    half_periods = np.array([PExponent(value).pi_p for value in exponents])
    return _report(
        "monotonic",
        f"{samples} uniform points of (0, π_p/2), p = {exponent.p!r}; "
        + f"{exponents.size} geometric points of p in [{PI_P_GRID[0]}, {PI_P_GRID[1]}]",
        [
            Check("sinc_decreasing", x[1:], np.diff(log_deficit)),
            Check("pi_p_decreasing", exponents[1:], -np.diff(half_periods)),
        ],
    )


def verify_bhayo(p: PExponent | float, samples: int):
    """
    The rational bounds of y/arcsin_p(y):
    (1 − y^p)^(1/(p(p+1))) < y/arcsin_p y on (0, y*) with y* = (1 − (2/π_p)^(p(p+1)))^(1/p), and
    y/arcsin_p y < (1 + y^p/(p(p+1)))^(−1) on (0, 1).

    Margins are compared in log form, by their series in y^p where the direct difference cancels.
    """
    exponent = as_exponent(p)
    __check_samples(samples)
    p_value = exponent.p
    scale = 1.0 / (p_value * (p_value + 1.0))
    lower_series, upper_series = bhayo_margin_series(exponent)

    endpoint = math.exp(math.log1p(-((2.0 / exponent.pi_p) ** (p_value * (p_value + 1.0)))) / p_value)
    endpoint_angle = float(arcsin_p(exponent, endpoint))

    def margins(y: FloatArray, lower_side: bool):
        w = y**p_value
        log_ratio = np.log(arcsin_p(exponent, y) / y)
        if lower_side:
            direct = -log_ratio - np.log1p(-w) * scale
            near = lower_series.evaluate(y)
        else:
            direct = log_ratio - np.log1p(w * scale)
            near = upper_series.evaluate(y)
        return np.where(w < BHAYO_SERIES_SWITCH, near, direct)

    lower_y = endpoint * np.arange(1, samples + 1) / (samples + 1)
    upper_y = np.arange(1, samples + 1) / (samples + 1)
    return _report(
        "bhayo",
        f"{samples} uniform points of (0, {endpoint!r}) and of (0, 1), p = {exponent.p!r}",
        [
            Check("endpoint_in_unit_interval", np.array([endpoint]), np.array([min(endpoint, 1.0 - endpoint)])),
            Check(
                "endpoint_angle_in_quadrant",
                np.array([endpoint]),
                np.array([min(endpoint_angle, exponent.half_pi_p - endpoint_angle)]),
            ),
            Check("lower", lower_y, margins(lower_y, lower_side=True)),
            Check("upper", upper_y, margins(upper_y, lower_side=False)),
        ],
    )


def __beta_finite_integrand(mu: float, lam: float, nu: float) -> RealFunction:
    def integrand(x: FloatArray) -> FloatArray:
        return x ** (mu - 1.0) * (-np.expm1(lam * np.log(x))) ** (nu - 1.0)

    return integrand


def __beta_infinite_integrand(mu: float, p: float, b: float, nu: float) -> RealFunction:
    def integrand(x: FloatArray) -> FloatArray:
        return x ** (mu - 1.0) * (1.0 + b * x**p) ** -nu

    return integrand


def verify_beta_identities(
    finite_grid: Sequence[tuple[float, float, float]] = (),
    infinite_grid: Sequence[tuple[float, float, float, float]] = (),
):
    """
    ∫₀¹ x^(μ−1)(1 − x^λ)^(ν−1) dx = (1/λ)B(μ/λ, ν) over (μ, λ, ν), its incomplete form
    ∫₀^c x^(μ−1)(1 − x^λ)^(ν−1) dx = (1/λ)B(c^λ; μ/λ, ν) at c = `BETA_PARTIAL_UPPER`, and
    ∫₀^∞ x^(μ−1)(1 + b·x^p)^(−ν) dx = (1/p)b^(−μ/p)B(μ/p, ν − μ/p) over (μ, p, b, ν).
    Each point must agree within `BETA_IDENTITY_TOL`.
    """
    finite_grid = finite_grid or BETA_FINITE_GRID
    infinite_grid = infinite_grid or BETA_INFINITE_GRID

    finite_margins = []
    partial_margins = []
    for mu, lam, nu in finite_grid:
        if min(mu, lam, nu) <= 0:
            raise invalid_parameter("(μ, λ, ν)", (mu, lam, nu), "all > 0")
        integrand = __beta_finite_integrand(mu, lam, nu)
        result = integrate(integrand, 0.0, 1.0, BETA_QUADRATURE_TOL, smooth_ends=True)
        expected = float(beta(mu / lam, nu)) / lam
        finite_margins.append(BETA_IDENTITY_TOL - abs(result.value - expected))

        partial = integrate(integrand, 0.0, BETA_PARTIAL_UPPER, BETA_QUADRATURE_TOL, smooth_ends=True)
        expected = incomplete_beta(mu / lam, nu, BETA_PARTIAL_UPPER**lam) / lam
        partial_margins.append(BETA_IDENTITY_TOL - abs(partial.value - expected))

    infinite_margins = []
    for mu, p, b, nu in infinite_grid:
        if min(mu, p, b, nu) <= 0 or not mu < p * nu:
            raise invalid_parameter("(μ, p, b, ν)", (mu, p, b, nu), "all > 0 and μ < pν")

        def tail(alpha: float, mu: float = mu, p: float = p, b: float = b, nu: float = nu):
            return b**-nu * alpha ** (mu - p * nu) / (p * nu - mu)

        result = integrate_to_infinity(
            __beta_infinite_integrand(mu, p, b, nu),
            0.0,
            BETA_QUADRATURE_TOL,
            tail,
            max_doublings=BETA_MAX_DOUBLINGS,
        )
        expected = b ** (-mu / p) * float(beta(mu / p, nu - mu / p)) / p
        infinite_margins.append(BETA_IDENTITY_TOL - abs(result.value - expected))

    return _report(
        "beta",
        f"{len(finite_grid)} finite and {len(infinite_grid)} improper parameter points",
        [
            Check("finite", np.arange(len(finite_grid), dtype=np.float64), np.array(finite_margins)),
            Check("incomplete", np.arange(len(finite_grid), dtype=np.float64), np.array(partial_margins)),
            Check("improper", np.arange(len(infinite_grid), dtype=np.float64), np.array(infinite_margins)),
        ],
    )


def gamma_ratio(a: float, b: float, q: FloatArray) -> FloatArray:
    """Γ(q + a)/Γ(q + b)·q^(b − a)."""
    q = np.asarray(q, dtype=np.float64)
    return poch(q + b, a - b) * q ** (b - a)


def _gamma_ratio_checks(a: float, b: float, q: FloatArray, label: str = ""):
    if q.size == 0 or np.any(np.diff(q) <= 0):
        raise invalid_parameter("q_list", q.tolist(), "strictly increasing")
    if np.any(q + a <= 0) or np.any(q + b <= 0):
        raise invalid_parameter("(a, b)", (a, b), "q + a > 0 and q + b > 0")
    deviation = np.abs(gamma_ratio(a, b, q) - 1.0)
    return [
        Check(
            f"nonincreasing{label}",
            q[1:],
            deviation[:-1] + GAMMA_RATIO_ROUNDING - deviation[1:],
            strict=False,
        ),
        Check(f"final{label}", q[-1:], 5.0 / q[-1:] - deviation[-1:]),
    ]


def verify_gamma_ratio(a: float, b: float, q_list: Sequence[float]):
    """|Γ(q + a)/Γ(q + b)·q^(b − a) − 1| nonincreasing along q_list, and below 5/q at its end."""
    q = np.asarray(q_list, dtype=np.float64)
    return _report("gamma-ratio", f"a = {a!r}, b = {b!r}, q in {list(q_list)}", _gamma_ratio_checks(a, b, q))


def verify_gamma_ratio_pairs(p: PExponent | float, q_list: Sequence[float] = (10.0, 100.0, 1000.0, 10000.0)):
    """The four (a, b) pairs the limit of I_p(q) needs."""
    p_value = as_exponent(p).p
    pairs = [(0.0, 0.5), (1.0, 0.0), (1.0 - 1.0 / p_value, 1.0), (-1.0 / p_value, 0.0)]
    q = np.asarray(q_list, dtype=np.float64)
    checks = [check for a, b in pairs for check in _gamma_ratio_checks(a, b, q, label=f"({a:g}, {b:g})")]
    return _report("gamma-ratio", f"{len(pairs)} (a, b) pairs, q in {list(q_list)}", checks)


def verify_tail_bounds(
    p: PExponent | float,
    alphas: Sequence[float] = (0.25, 0.5, 0.75, 1.0, 2.0, 5.0),
    qs: Sequence[float] = (5.0, 10.0, 50.0),
):
    """∫_α^∞ |sinc_p x|^q dx, computed, against its two-branch upper bound."""
    exponent = as_exponent(p)
    locations = []
    margins = []
    for q in qs:
        integrand = _phi_integrand(exponent, 0, q)
        for alpha in alphas:
            bound = tail_bound(exponent, alpha, q).bound
            result = integrate_to_infinity(
                integrand,
                alpha,
                TAIL_QUADRATURE_RTOL * bound,
                lambda a, q=q: tail_bound(exponent, a, q).bound,
                period=exponent.pi_p,
                max_doublings=MAX_DOUBLINGS,
                breakpoint_spacing=exponent.half_pi_p,
            )
            locations.append(alpha)
            margins.append(bound - result.value - result.total_error)
    return _report(
        "tail",
        f"alpha in {list(alphas)}, q in {list(qs)}, p = {exponent.p!r}",
        [Check("tail", np.array(locations), np.array(margins), strict=False)],
    )


def verify_pythagorean(p: PExponent | float, samples: int):
    """|sin_p x|^p + |cos_p x|^p = 1 over [−2π_p, 2π_p]."""
    exponent = as_exponent(p)
    __check_samples(samples)
    x = np.linspace(-2.0 * exponent.pi_p, 2.0 * exponent.pi_p, samples)
    sine = sin_p(exponent, x)
    cosine = cos_p(exponent, x)
    error = np.abs(np.abs(sine) ** exponent.p + np.abs(cosine) ** exponent.p - 1.0)
    return _report(
        "pythagorean",
        f"{samples} uniform points of [−2π_p, 2π_p], p = {exponent.p!r}",
        [Check("pythagorean", x, PYTHAGOREAN_TOL - error, strict=False)],
    )


def verify_symmetry(p: PExponent | float, samples: int):
    """Oddness, reflection about π_p/2, 2π_p-periodicity, and sin_p∘arcsin_p = id."""
    exponent = as_exponent(p)
    __check_samples(samples)
    half = exponent.half_pi_p
    tolerance = max(SYMMETRY_TOL, 8.0 * np.finfo(np.float64).eps * exponent.pi_p)

    x = np.linspace(-2.0 * exponent.pi_p, 2.0 * exponent.pi_p, samples)
    odd = np.abs(sin_p(exponent, -x) + sin_p(exponent, x))
    offsets = half * np.arange(1, samples + 1) / (samples + 1)
    reflection = np.abs(sin_p(exponent, half - offsets) - sin_p(exponent, half + offsets))
    periodic = np.abs(sin_p(exponent, x + 2.0 * exponent.pi_p) - sin_p(exponent, x))
    y = (1.0 - ROUND_TRIP_MARGIN) * np.arange(samples + 1) / samples
    round_trip = np.abs(sin_p(exponent, arcsin_p(exponent, y)) - y)

    return _report(
        "symmetry",
        f"{samples} points per identity, p = {exponent.p!r}",
        [
            Check("odd", x, tolerance - odd, strict=False),
            Check("reflection", offsets, tolerance - reflection, strict=False),
            Check("periodic", x, PERIODICITY_TOL - periodic, strict=False),
            Check("round_trip", y, PERIODICITY_TOL - round_trip, strict=False),
        ],
    )


def verify_full_line(q_list: Sequence[float] = (2.0, 3.0, 5.0, 10.0, 100.0), tol: float = DEFAULT_TOL):
    """
    √q·∫_{−∞}^{∞} |sin x/x|^q dx ≤ √2·π for q ≥ 2 (p = 2), up to the quadrature error.
    Equality holds at q = 2.
    """
    if any(q < 2 for q in q_list):
        raise invalid_parameter("q_list", list(q_list), "q >= 2")
    integrals = [ball_integral(2.0, q, tol) for q in q_list]
    # Lowest value the quadrature allows for each
    values = np.array([
        2.0 * (integral.value - math.sqrt(integral.q) * integral.quad.total_error) for integral in integrals
    ])
    return _report(
        "full-line",
        f"p = 2, q in {list(q_list)}",
        [Check("full_line", np.asarray(q_list, dtype=np.float64), math.sqrt(2.0) * math.pi - values, strict=False)],
    )


class ContainerEnumMeta(EnumMeta):
    # Allow checking if simple string is enum
    @override
    def __contains__(cls, other: object):
        try:
            cls(other)
        except ValueError:
            return False
        return True


@unique
class Suite(StrEnum, metaclass=ContainerEnumMeta):
    # Lowercase, dashed name from auto()
    @override
    @staticmethod
    def _generate_next_value_(name: str, start: int, count: int, last_values: list[str]) -> str:
        return name.lower().replace("_", "-")

    JORDAN = auto()
    BHAYO = auto()
    BETA = auto()
    GAMMA_RATIO = auto()
    TAIL = auto()
    MONOTONIC = auto()
    PYTHAGOREAN = auto()
    SYMMETRY = auto()
    BOUNDED = auto()
    FULL_LINE = auto()
    ALL = auto()


def verify_suite(name: str | Suite, p: PExponent | float, samples: int) -> InequalityReport:
    if name not in Suite:
        raise invalid_parameter("suite", name, "one of " + ", ".join(Suite))
    exponent = as_exponent(p)
    match Suite(name):
        case Suite.JORDAN:
            return verify_jordan(exponent, samples)
        case Suite.BHAYO:
            return verify_bhayo(exponent, samples)
        case Suite.BETA:
            return verify_beta_identities()
        case Suite.GAMMA_RATIO:
            return verify_gamma_ratio_pairs(exponent)
        case Suite.TAIL:
            return verify_tail_bounds(exponent)
        case Suite.MONOTONIC:
            return verify_sinc_monotone(exponent, samples)
        case Suite.PYTHAGOREAN:
            return verify_pythagorean(exponent, samples)
        case Suite.SYMMETRY:
            return verify_symmetry(exponent, samples)
        case Suite.BOUNDED:
            return verify_sinc_bounded(exponent, samples)
        case Suite.FULL_LINE:
            return verify_full_line()
        case Suite.ALL:
            raise invalid_parameter("suite", name, "a single suite (use verify_all)")


def verify_all(p: PExponent | float, samples: int):
    """Every suite; the full-line one only applies at p = 2."""
    exponent = as_exponent(p)
    suites = [suite for suite in Suite if suite is not Suite.ALL]
    if exponent.p != 2:
        suites.remove(Suite.FULL_LINE)
    return [verify_suite(suite, exponent, samples) for suite in suites]


# endregion Verification suites


EXP_SWITCH_Q = 50.0
"""Above this q the integrand is exp(q·ln|sinc_p|) rather than a power of |sinc_p|"""
FOLD_DIRECT_PERIODS = 128
LOG_FLOOR = -745.0
"""Stands in for ln 0 at t = 0, where every term of the folded sum vanishes anyway"""
NEAR_VIOLATION = 1e-12
BOUNDED_PERIODS = 4
PI_P_GRID = (1.01, 100.0)
BHAYO_SERIES_SWITCH = 0.05
BETA_IDENTITY_TOL = 1e-8
BETA_PARTIAL_UPPER = 0.5
"""Upper limit of the incomplete Beta identity"""
BETA_QUADRATURE_TOL = 1e-10
BETA_MAX_DOUBLINGS = 48
BETA_FINITE_GRID = (
    (1.0, 2.0, 0.5),
    (1.0, 1.0, 2.0),
    (0.5, 2.0, 1.5),
    (2.0, 3.0, 0.75),
    (1.5, 0.5, 2.5),
    (0.75, 1.5, 0.6),
)
"""(μ, λ, ν)"""
BETA_INFINITE_GRID = (
    (1.0, 2.0, 1.0, 1.0),
    (0.5, 2.0, 2.0, 1.0),
    (1.0, 3.0, 0.5, 1.0),
    (2.0, 2.5, 1.0, 2.0),
    (1.5, 4.0, 3.0, 1.2),
)
"""(μ, p, b, ν)"""
GAMMA_RATIO_ROUNDING = 1e-13
TAIL_QUADRATURE_RTOL = 1e-8
"""Tail quadrature tolerance, relative to the bound it is checked against"""
PYTHAGOREAN_TOL = 1e-12
SYMMETRY_TOL = 1e-14
PERIODICITY_TOL = 1e-12
ROUND_TRIP_MARGIN = 1e-9
