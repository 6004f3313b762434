"""
Beta-family special functions backing the p-trigonometric inverse.

The incomplete Beta function is evaluated with the modified Lentz algorithm on its
continued fraction, vectorised over the argument. The parameters (a, b) are scalars:
every caller works at a fixed exponent.
"""

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import betaln

from error_messages import ContinuedFractionError, invalid_parameter
from utils import FloatArray, as_float_array, debug_log, unwrap_scalar


def beta_reflection(a: float, complement: float | None = None) -> float:
    """
    Complete Beta B(a, 1 − a) = π / sin(πa), for 0 < a < 1.

    @param complement: 1 − a when the caller has it exactly, the sine is taken of the smaller of the two.
    """
    if complement is None:
        complement = 1.0 - a
    if not (0 < a < 1 and 0 < complement < 1):
        raise invalid_parameter("a", a, "0 < a < 1")
    return float(np.pi / np.sin(np.pi * min(a, complement)))


def __lentz_guard(values: FloatArray):
    return np.where(np.abs(values) < LENTZ_TINY, LENTZ_TINY, values)


def beta_continued_fraction(a: float, b: float, x: FloatArray) -> FloatArray:
    """
    Continued fraction part of the incomplete Beta function, such that
    B(x; a, b) = x^a (1 − x)^b / a · cf(a, b, x).

    Converges quickly for x < (a + 1)/(a + b + 2).
    """
    x = as_float_array(x)
    shape = x.shape
    x = x.reshape(-1)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0

    c = np.ones_like(x)
    d = 1.0 / __lentz_guard(1.0 - qab * x / qap)
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)

    for m in range(1, CONTINUED_FRACTION_MAX_TERMS + 1):
        index = np.flatnonzero(active)
        if index.size == 0:
            break
        xa, ca, da, ha = x[index], c[index], d[index], h[index]
        m2 = 2 * m

        # Even step
        aa = m * (b - m) * xa / ((qam + m2) * (a + m2))
        da = 1.0 / __lentz_guard(1.0 + aa * da)
        ca = __lentz_guard(1.0 + aa / ca)
        ha *= da * ca

        # Odd step
        aa = -(a + m) * (qab + m) * xa / ((a + m2) * (qap + m2))
        da = 1.0 / __lentz_guard(1.0 + aa * da)
        ca = __lentz_guard(1.0 + aa / ca)
        delta = da * ca
        ha *= delta

        c[index], d[index], h[index] = ca, da, ha
        active[index] = np.abs(delta - 1.0) >= CONTINUED_FRACTION_EPS
    else:
        if active.any():
            raise ContinuedFractionError(
                "incomplete Beta continued fraction did not converge",
                {"a": a, "b": b, "x": float(x[active][0]), "terms": CONTINUED_FRACTION_MAX_TERMS},
            )

    return h.reshape(shape)


def incomplete_beta(a: float, b: float, x: ArrayLike, *, regularized: bool = False):
    """
    Incomplete Beta function B(x; a, b) = ∫₀^x t^(a−1) (1 − t)^(b−1) dt.

    @param regularized: Divide by the complete Beta B(a, b).
    @return: A float for scalar `x`, an array otherwise.
    """
    if a <= 0 or b <= 0:
        raise invalid_parameter("(a, b)", (a, b), "a > 0 and b > 0")
    values = as_float_array(x)
    if np.any((values < 0) | (values > 1)) or np.any(np.isnan(values)):
        raise invalid_parameter("x", x, "0 <= x <= 1")

    log_complete = float(betaln(a, b))
    result = np.zeros_like(values)
    direct = values < (a + 1.0) / (a + b + 2.0)
    inner = (values > 0) & (values < 1)

    lower = direct & inner
    if lower.any():
        xl = values[lower]
        result[lower] = np.exp(a * np.log(xl) + b * np.log1p(-xl)) / a * beta_continued_fraction(a, b, xl)

    upper = ~direct & inner
    if upper.any():
        xu = values[upper]
        complement = np.exp(b * np.log1p(-xu) + a * np.log(xu)) / b * beta_continued_fraction(b, a, 1.0 - xu)
        result[upper] = np.exp(log_complete) - complement

    result[values >= 1] = np.exp(log_complete)

    if regularized:
        result /= np.exp(log_complete)
    debug_log(f"incomplete_beta(a={a}, b={b}) on {values.size} point(s)")
    return unwrap_scalar(result, x)


CONTINUED_FRACTION_MAX_TERMS = 500
CONTINUED_FRACTION_EPS = 1e-15
LENTZ_TINY = 1e-300
"""Replaces zero denominators in the modified Lentz recurrence"""
