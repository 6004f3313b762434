"""
Truncated formal power series in the graded variable w = x^p, and the asymptotic expansion
of I_p(q) in inverse powers of q built on them.

The chain is: arcsin_p series → reversion to the sinc_p series (coefficients a_j) → product
with exp(u^p) after rescaling (coefficients b_j) → binomial expansion of the q-th power
(polynomials c_j(q)) → term-wise Laplace integrals regrouped by powers of 1/q (coefficients g_m).
"""

import math
from dataclasses import dataclass, field
from typing import Self

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.polynomial import polyval
from numpy.typing import ArrayLike
from scipy.special import factorial, gamma, poch

from error_messages import SeriesError, invalid_parameter
from ptrig import PExponent, as_exponent
from utils import FloatArray, as_float_array, debug_log, unwrap_scalar

type QPolynomial = Polynomial
"""Polynomial in q, coefficient m of q^m at index m"""

DEFAULT_ORDER = 12
BHAYO_SERIES_ORDER = 24
LEADING_COEFFICIENT_TOLERANCE = 1e-15
B1_TOLERANCE = 1e-14
LEADING_TERM_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """
    Σ coefs[k]·w^k with w = x^grade, times a leading x when `odd` is set.
    Every operation truncates to the lowest order involved: nothing above w^order is kept.
    """

    coefs: FloatArray
    odd: bool = False
    grade: float = 1.0

    def __post_init__(self):
        coefs = np.array(self.coefs, dtype=np.float64)
        if coefs.ndim != 1 or coefs.size == 0:
            raise invalid_parameter("coefs", self.coefs, "a non-empty 1-D sequence")
        coefs.setflags(write=False)
        object.__setattr__(self, "coefs", coefs)

    @property
    def order(self):
        return self.coefs.size - 1

    def __getitem__(self, k: int):
        return float(self.coefs[k])

    def __len__(self):
        return self.coefs.size

    def _like(self, coefs: ArrayLike, *, odd: bool | None = None):
        return PowerSeries(np.asarray(coefs), self.odd if odd is None else odd, self.grade)

    def plain(self):
        """The coefficient series without the leading factor x."""
        return self._like(self.coefs, odd=False)

    def truncate(self, order: int):
        if order > self.order:
            raise invalid_parameter("order", order, f"order <= {self.order}")
        return self._like(self.coefs[: order + 1])

    def __check_compatible(self, other: "PowerSeries"):
        if other.odd != self.odd or other.grade != self.grade:
            raise SeriesError("series with different leading factors or grades cannot be added")
        return min(self.order, other.order)

    def __add__(self, other: "PowerSeries | float") -> "PowerSeries":
        if isinstance(other, PowerSeries):
            order = self.__check_compatible(other)
            return self._like(self.coefs[: order + 1] + other.coefs[: order + 1])
        coefs = self.coefs.copy()
        coefs[0] += other
        return self._like(coefs)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.coefs)

    def __sub__(self, other: "PowerSeries | float") -> "PowerSeries":
        return self + (-other)

    def __rsub__(self, other: float):
        return (-self) + other

    def __mul__(self, other: "PowerSeries | float") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self._like(other * self.coefs)
        if self.odd and other.odd:
            raise SeriesError("the product of two odd series leaves the graded variable")
        order = min(self.order, other.order)
        coefs = np.convolve(self.coefs[: order + 1], other.coefs[: order + 1])[: order + 1]
        return PowerSeries(coefs, self.odd or other.odd, self.grade)

    __rmul__ = __mul__

    def reciprocal(self):
        c = self.coefs
        if c[0] == 0:
            raise SeriesError("leading coefficient of the denominator is zero")
        result = np.zeros_like(c)
        result[0] = 1.0 / c[0]
        for n in range(1, c.size):
            result[n] = -np.dot(c[1 : n + 1], result[n - 1 :: -1][:n]) / c[0]
        return self._like(result, odd=False)

    def __truediv__(self, other: "PowerSeries | float") -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if other.odd:
                raise SeriesError("cannot divide by an odd series")
            return self * other.reciprocal()
        return self._like(self.coefs / other)

    def power(self, alpha: float):
        """
        Real power of a series with positive constant term, by the recurrence
        n·f₀·gₙ = Σ_{k=1}^{n} ((α + 1)k − n)·f_k·g_{n−k}.
        """
        f = self.coefs
        if f[0] <= 0:
            raise SeriesError("real powers need a positive constant term")
        g = np.zeros_like(f)
        g[0] = f[0] ** alpha
        for n in range(1, f.size):
            k = np.arange(1, n + 1)
            g[n] = np.sum(((alpha + 1.0) * k - n) * f[k] * g[n - k]) / (n * f[0])
        return self._like(g, odd=False)

    def log(self):
        f = self.coefs
        if f[0] <= 0:
            raise SeriesError("log needs a positive constant term")
        result = np.zeros_like(f)
        result[0] = math.log(f[0])
        for n in range(1, f.size):
            k = np.arange(1, n)
            result[n] = (f[n] - np.sum(k * result[k] * f[n - k]) / n) / f[0]
        return self._like(result, odd=False)

    def derivative(self):
        """d/dw of the coefficient series; one order is lost."""
        if self.order == 0:
            return self._like([0.0], odd=False)
        return self._like(self.coefs[1:] * np.arange(1, self.coefs.size), odd=False)

    def times_w(self):
        """Multiplies by w, keeping the order."""
        return self._like(np.concatenate([[0.0], self.coefs[:-1]]))

    def horner(self, inner: "PowerSeries"):
        """Σ coefs[k]·inner^k, for an `inner` series without constant term."""
        if inner.coefs[0] != 0:
            raise SeriesError("composition needs an inner series without constant term")
        order = min(self.order, inner.order)
        inner = inner.truncate(order).plain()
        result = PowerSeries(np.zeros(order + 1), False, self.grade) + float(self.coefs[-1])
        for coefficient in self.coefs[-2::-1]:
            result = result * inner + float(coefficient)
        return result

    def compose(self, inner: "PowerSeries"):
        """self(X) for an odd series X = x·σ(w) of the same grade."""
        if not inner.odd or inner.grade != self.grade:
            raise SeriesError("can only substitute an odd series of the same grade")
        sigma = inner.plain()
        scaled_w = sigma.power(self.grade).times_w()
        outer = self.plain().horner(scaled_w)
        if self.odd:
            return self._like((outer * sigma).coefs, odd=True)
        return outer

    def evaluate(self, x: ArrayLike):
        """Sum of the truncated series at x ≥ 0."""
        values = as_float_array(x)
        result = polyval(values**self.grade, self.coefs)
        if self.odd:
            result *= values
        return unwrap_scalar(np.asarray(result, dtype=np.float64), x)

    @classmethod
    def identity(cls, order: int, grade: float) -> Self:
        coefs = np.zeros(order + 1)
        coefs[0] = 1.0
        return cls(coefs, odd=True, grade=grade)


@dataclass(frozen=True, eq=False)
class AsymptoticExpansion:
    p: PExponent
    order: int
    c_polynomials: tuple[QPolynomial, ...] = field(repr=False)
    regrouped: tuple[float, ...]
    """g_m, the coefficients of the expansion in 1/q"""

    @property
    def stable_order(self):
        """Highest m whose g_m collects every contributing term."""
        return self.order // 2

    def term(self, j: int, q: float):
        """(p(p+1))^(1/p)·c_j(q)·Γ(j + 1/p)/(p·q^j)"""
        p = self.p.p
        scale = (p * (p + 1.0)) ** (1.0 / p) / p
        return float(scale * self.c_polynomials[j](q) * gamma(j + 1.0 / p) / q**j)


def __check_order(order: int, minimum: int):
    if order < minimum:
        raise invalid_parameter("J", order, f"J >= {minimum}")


def arcsin_series(p: PExponent | float, order: int):
    """arcsin_p x = x·Σ C(k)/(pk + 1)·w^k, with C(k) = (1/p)_k/k! from (1 − w)^(−1/p)."""
    exponent = as_exponent(p)
    __check_order(order, 0)
    k = np.arange(order + 1)
    coefs = poch(1.0 / exponent.p, k) / factorial(k) / (exponent.p * k + 1.0)
    return PowerSeries(coefs, odd=True, grade=exponent.p)


def revert_series(s: PowerSeries, order: int):
    """
    Inverse function series of an odd series x·α(w) with α(0) = 1, as x·σ(w).

    σ solves σ·α(w·σ^p) = 1, found by Newton iteration on formal series:
    each step doubles the number of correct coefficients.
    """
    if not s.odd:
        raise SeriesError("reversion needs an odd series x·α(x^p)")
    if abs(s.coefs[0] - 1.0) > LEADING_COEFFICIENT_TOLERANCE:
        raise SeriesError(f"reversion needs a unit leading coefficient, got {s.coefs[0]!r}")
    __check_order(order, 0)
    alpha = s.plain().truncate(order)
    slope = alpha.derivative()
    slope = PowerSeries(np.concatenate([slope.coefs, [0.0]]), grade=s.grade)
    p = s.grade

    sigma = PowerSeries(np.eye(1, order + 1).ravel(), grade=p)
    iterations = math.ceil(math.log2(order + 1)) + 2
    for iteration in range(iterations):
        scaled_w = sigma.power(p).times_w()
        alpha_at = alpha.horner(scaled_w)
        residual = sigma * alpha_at - 1.0
        jacobian = alpha_at + p * slope.horner(scaled_w) * scaled_w
        correction = residual / jacobian
        sigma -= correction
        if not np.any(correction.coefs):
            debug_log(f"revert_series: exact after {iteration + 1} Newton step(s)")
            break

    return PowerSeries(sigma.coefs, odd=True, grade=p)


def sinc_series(p: PExponent | float, order: int):
    """sin_p x = x·Σ a_j·w^j, the reversion of the arcsin_p series."""
    return revert_series(arcsin_series(p, order), order)


def b_coefficients(p: PExponent | float, order: int):
    """exp(u^p)·sinc_p((p(p+1))^(1/p)·u) as a series in w = u^p."""
    exponent = as_exponent(p)
    __check_order(order, 2)
    p_value = exponent.p
    a = sinc_series(exponent, order).coefs
    rescaled = a * (p_value * (p_value + 1.0)) ** np.arange(order + 1)
    exponential = 1.0 / factorial(np.arange(order + 1))
    b = PowerSeries(rescaled, grade=p_value) * PowerSeries(exponential, grade=p_value)
    if abs(b[1]) > B1_TOLERANCE:
        raise SeriesError(f"b_1 should vanish, got {b[1]!r}")
    return b


def c_coefficients(p: PExponent | float, order: int) -> list[QPolynomial]:
    """
    [w^j] of (1 + B(w))^q, where B is the b series without its constant term,
    as polynomials in q: Σ_m (q choose m)·[w^j]B^m.
    """
    exponent = as_exponent(p)
    __check_order(order, 0)
    tail = b_coefficients(exponent, max(order, 2)).coefs[: order + 1].copy()
    # Both vanish identically; b_1 only to rounding
    tail[0] = 0.0
    if order >= 1:
        tail[1] = 0.0
    b_tail = PowerSeries(tail, grade=exponent.p)

    polynomials = [Polynomial([0.0]) for _ in range(order + 1)]
    b_power = PowerSeries(np.eye(1, order + 1).ravel(), grade=exponent.p)
    # (q choose m) = q(q − 1)…(q − m + 1)/m!, one factor per step
    binomial = Polynomial([1.0])
    for m in range(order // 2 + 1):
        for j in range(2 * m, order + 1):
            polynomials[j] += binomial * b_power[j]
        b_power *= b_tail
        binomial = binomial * Polynomial([-float(m), 1.0]) / (m + 1)
    return [polynomial.trim() for polynomial in polynomials]


def assemble_expansion(p: PExponent | float, order: int = DEFAULT_ORDER):
    """
    I_p(q) ~ Σ_m g_m/q^m, from the term-wise Laplace integrals
    ∫₀^∞ e^(−q·u^p)·u^(pj) du = Γ(j + 1/p)/(p·q^(j + 1/p)).
    """
    exponent = as_exponent(p)
    __check_order(order, 2)
    p_value = exponent.p
    c = c_coefficients(exponent, order)
    scale = (p_value * (p_value + 1.0)) ** (1.0 / p_value) / p_value

    regrouped = []
    for m in range(order // 2 + 1):
        total = math.fsum(
            float(c[j].coef[j - m]) * float(gamma(j + 1.0 / p_value))
            for j in range(m, min(2 * m, order) + 1)
            if j - m < c[j].coef.size
        )
        regrouped.append(scale * total)

    expansion = AsymptoticExpansion(exponent, order, tuple(c), tuple(regrouped))
    __check_leading_terms(expansion)
    return expansion


def leading_coefficients(p: PExponent | float):
    """Closed forms of g_0 and g_1."""
    exponent = as_exponent(p)
    p_value = exponent.p
    g0 = (p_value * (p_value + 1.0)) ** (1.0 / p_value) * float(gamma(1.0 / p_value)) / p_value
    g1 = g0 * (-(p_value**2) + p_value + 1.0) * (p_value + 1.0) / (2.0 * p_value * (2.0 * p_value + 1.0))
    return g0, g1


def __check_leading_terms(expansion: AsymptoticExpansion):
    g0, g1 = leading_coefficients(expansion.p)
    for m, expected in enumerate((g0, g1)):
        actual = expansion.regrouped[m]
        # g_1 vanishes at the golden ratio; tolerance scales with g_0
        if not math.isclose(actual, expected, rel_tol=LEADING_TERM_RTOL, abs_tol=LEADING_TERM_RTOL * abs(g0)):
            raise SeriesError(f"g_{m} = {actual!r} does not match its closed form {expected!r}")


def evaluate_expansion(expansion: AsymptoticExpansion, q: float, m_max: int):
    """Σ_{m ≤ m_max} g_m/q^m."""
    if not q > 1:
        raise invalid_parameter("q", q, "q > 1")
    if not 0 <= m_max <= expansion.stable_order:
        raise invalid_parameter("m_max", m_max, f"0 <= m_max <= {expansion.stable_order}")
    return math.fsum(g / q**m for m, g in enumerate(expansion.regrouped[: m_max + 1]))


def bhayo_margin_series(p: PExponent | float, order: int = BHAYO_SERIES_ORDER):
    """
    Series in w = y^p of the two log-margins of the rational bounds of y/arcsin_p(y):
    lower = ln(y/arcsin_p y) − ln(1 − w)/(p(p+1)) and
    upper = ln(arcsin_p y / y) − ln(1 + w/(p(p+1))).
    """
    exponent = as_exponent(p)
    p_value = exponent.p
    log_ratio = arcsin_series(exponent, order).plain().log()
    k = np.arange(1, order + 1)
    scale = 1.0 / (p_value * (p_value + 1.0))
    lower_bound_log = np.concatenate([[0.0], -scale / k])
    upper_bound_log = np.concatenate([[0.0], -((-scale) ** k) / k])

    lower = -log_ratio - PowerSeries(lower_bound_log, grade=p_value)
    upper = log_ratio - PowerSeries(upper_bound_log, grade=p_value)
    # The constant and w terms cancel exactly
    lower_coefs, upper_coefs = lower.coefs.copy(), upper.coefs.copy()
    lower_coefs[:2] = 0.0
    upper_coefs[:2] = 0.0
    return PowerSeries(lower_coefs, grade=p_value), PowerSeries(upper_coefs, grade=p_value)


def second_order_check(order: int = DEFAULT_ORDER):
    """
    g_2/g_0 at p = 2, against the −13/1120 of the classical expansion of ∫|sin x/x|^q.

    @return: The computed ratio, the classical one and whether they agree to `LEADING_TERM_RTOL`.
    """
    expansion = assemble_expansion(2.0, order)
    ratio = expansion.regrouped[2] / expansion.regrouped[0]
    expected = -13.0 / 1120.0
    return ratio, expected, math.isclose(ratio, expected, rel_tol=LEADING_TERM_RTOL)
