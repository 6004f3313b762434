"""
Generalized p-trigonometric functions.

sin_p is the inverse of arcsin_p(y) = ∫₀^y (1 − t^p)^(−1/p) dt on [0, π_p/2], extended to the
whole real line as an odd, 2π_p-periodic function symmetric about π_p/2. cos_p is its derivative.

Every public function accepts a scalar or an array for its second argument and returns a
float or an array accordingly. The exponent can be given as a `PExponent` or a bare float.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from error_messages import InverterError, PoleError, invalid_parameter
from special_functions import beta_continued_fraction, beta_reflection
from utils import FloatArray, as_float_array, debug_log, unwrap_scalar

type AngleValue = ArrayLike


@dataclass(frozen=True)
class PExponent:
    """Validated exponent p > 1, with the constants every evaluation needs."""

    p: float
    pi_p: float = field(init=False)
    beta_const: float = field(init=False)
    """B(1/p, 1 − 1/p) = π/sin(π/p)"""
    seam_w: float = field(init=False, repr=False)
    """Value of y^p where the inverter switches from the y chart to the 1 − y^p chart"""
    chart_seam: float = field(init=False, repr=False)
    """arcsin_p at the seam"""

    def __post_init__(self):
        try:
            p = float(self.p)
        except (TypeError, ValueError):
            raise invalid_parameter("p", self.p, "1 < p < inf") from None
        if not (math.isfinite(p) and p > 1):
            raise invalid_parameter("p", self.p, "1 < p < inf")
        beta_const = beta_reflection(1.0 / p, (p - 1.0) / p)
        seam_w = (1.0 + 1.0 / p) / 3.0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta_const", beta_const)
        object.__setattr__(self, "pi_p", 2.0 * beta_const / p)
        object.__setattr__(self, "seam_w", seam_w)
        object.__setattr__(self, "chart_seam", float(_lower_chart(p, np.array([seam_w ** (1.0 / p)]))[0]))

    @property
    def half_pi_p(self):
        return self.pi_p / 2.0

    @property
    def sinc_coefficients(self):
        """Coefficients of w and w² in sinc_p x = 1 + a₁w + a₂w² + …, with w = x^p."""
        p = self.p
        return (
            -1.0 / (p * (p + 1.0)),
            (-(p**2) + 2.0 * p + 1.0) / (2.0 * p**2 * (p + 1.0) * (2.0 * p + 1.0)),
        )


def as_exponent(p: "PExponent | float"):
    return p if isinstance(p, PExponent) else PExponent(p)


def pi_p(p: PExponent | float) -> float:
    """2π / (p sin(π/p)), the half-period of sin_p."""
    return as_exponent(p).pi_p


def _lower_chart(p: float, y: FloatArray) -> FloatArray:
    """arcsin_p(y), accurate while y^p stays below the seam."""
    w = y**p
    return y * (1.0 - w) ** (1.0 - 1.0 / p) * beta_continued_fraction(1.0 / p, 1.0 - 1.0 / p, w)


def _upper_chart(p: float, w: FloatArray) -> FloatArray:
    """π_p/2 − arcsin_p(y) as a function of w = 1 − y^p, accurate while w stays below 1 − seam."""
    a = 1.0 - 1.0 / p
    return w**a * (1.0 - w) ** (1.0 / p) * beta_continued_fraction(a, 1.0 / p, w) / (p - 1.0)


def _arcsin(exponent: PExponent, y: FloatArray) -> FloatArray:
    p = exponent.p
    result = np.empty_like(y)
    lower = y**p <= exponent.seam_w
    result[lower] = _lower_chart(p, y[lower])
    upper = ~lower
    if upper.any():
        w = -np.expm1(p * np.log(y[upper]))
        result[upper] = exponent.half_pi_p - _upper_chart(p, w)
    return result


def arcsin_p(p: PExponent | float, y: ArrayLike):
    """
    F_p(y) = ∫₀^y (1 − t^p)^(−1/p) dt = (1/p)·B(y^p; 1/p, 1 − 1/p), for 0 ≤ y ≤ 1.
    """
    exponent = as_exponent(p)
    values = as_float_array(y)
    if not np.all((values >= 0) & (values <= 1)):
        raise invalid_parameter("y", y, "0 <= y <= 1")
    return unwrap_scalar(_arcsin(exponent, values), y)


def arcsin_p_signed(p: PExponent | float, y: ArrayLike):
    """Odd extension of `arcsin_p` to [−1, 1]."""
    exponent = as_exponent(p)
    values = as_float_array(y)
    if not np.all((values >= -1) & (values <= 1)):
        raise invalid_parameter("y", y, "-1 <= y <= 1")
    return unwrap_scalar(np.sign(values) * _arcsin(exponent, np.abs(values)), y)


def arcsin_excess(p: PExponent | float, y: ArrayLike):
    """
    arcsin_p(y)/y − 1 without cancellation, from its positive series in w = y^p.
    Only valid below the chart seam (y^p ≤ (1 + 1/p)/3).
    """
    exponent = as_exponent(p)
    values = as_float_array(y)
    w = values**exponent.p
    if np.any(w > exponent.seam_w) or np.any(values < 0):
        raise invalid_parameter("y", y, f"0 <= y^p <= {exponent.seam_w}")
    return unwrap_scalar(_arcsin_excess(exponent.p, w), y)


def _arcsin_excess(p: float, w: FloatArray) -> FloatArray:
    return w * _arcsin_excess_ratio(p, w)


def _arcsin_excess_ratio(p: float, w: FloatArray) -> FloatArray:
    """(arcsin_p(y)/y − 1)/w, with w = y^p. Stays finite and positive where w underflows."""
    total = np.zeros_like(w)
    binomial = 1.0
    power = np.ones_like(w)
    for k in range(1, EXCESS_SERIES_MAX_TERMS + 1):
        binomial *= (1.0 / p + k - 1.0) / k
        term = binomial * power / (p * k + 1.0)
        total += term
        if np.all(term <= EXCESS_SERIES_EPS * total):
            break
        power *= w
    return total


def _newton_bracketed(
    function: Callable[[FloatArray], FloatArray],
    inverse_slope: Callable[[FloatArray], FloatArray],
    target: FloatArray,
    guess: FloatArray,
    upper: float,
):
    """
    Solves function(z) = target for an increasing `function` on [0, upper].
    Newton steps are kept inside a shrinking bracket and replaced by bisection when they leave it.
    """
    lo = np.zeros_like(target)
    hi = np.full_like(target, upper)
    z = np.clip(guess, lo, hi)
    done = np.zeros(target.shape, dtype=bool)

    for _ in range(NEWTON_MAX_ITERATIONS):
        index = np.flatnonzero(~done)
        if index.size == 0:
            break
        zi = z[index]
        residual = function(zi) - target[index]
        step = residual * inverse_slope(zi)
        lo[index] = np.where(residual < 0, zi, lo[index])
        hi[index] = np.where(residual > 0, zi, hi[index])

        candidate = zi - step
        outside = ~((candidate > lo[index]) & (candidate < hi[index])) & (residual != 0)
        if outside.any():
            debug_log(f"sin_p inverter: bisection fallback on {int(outside.sum())} point(s)")
        candidate = np.where(outside, 0.5 * (lo[index] + hi[index]), candidate)
        z[index] = np.where(residual == 0, zi, candidate)

        small_step = (np.abs(step) <= NEWTON_RTOL * np.abs(zi)) & ~outside
        collapsed = hi[index] - lo[index] <= NEWTON_RTOL * hi[index]
        done[index] = (residual == 0) | small_step | collapsed
    else:
        if not done.all():
            stuck = np.flatnonzero(~done)
            raise InverterError(
                "sin_p inverter did not converge",
                {
                    "unconverged": int(stuck.size),
                    "target": float(target[stuck[0]]),
                    "last_iterate": float(z[stuck[0]]),
                    "bracket": (float(lo[stuck[0]]), float(hi[stuck[0]])),
                },
            )
    return z


def _first_quadrant(exponent: PExponent, x: FloatArray):
    """@return: sin_p and cos_p of angles in [0, π_p/2]."""
    p = exponent.p
    sine = np.empty_like(x)
    cosine = np.empty_like(x)

    lower = x <= exponent.chart_seam
    if lower.any():
        xl = x[lower]
        guess = np.minimum(1.0 - 1e-16, 2.0 * xl / exponent.pi_p + (xl / exponent.pi_p) ** 2)
        y = _newton_bracketed(
            lambda y: _lower_chart(p, y),
            lambda y: (1.0 - y**p) ** (1.0 / p),
            xl,
            guess,
            exponent.seam_w ** (1.0 / p),
        )
        sine[lower] = y
        cosine[lower] = np.exp(np.log1p(-(y**p)) / p)

    upper = ~lower
    if upper.any():
        delta = np.maximum(exponent.half_pi_p - x[upper], 0.0)
        with np.errstate(divide="ignore"):
            log_guess = p / (p - 1.0) * np.log((p - 1.0) * delta)
        # Below the smallest float, cos_p rounds to zero
        underflow = log_guess < LOG_TINY
        w = np.zeros_like(delta)
        if (~underflow).any():
            w[~underflow] = _newton_bracketed(
                lambda w: _upper_chart(p, w),
                lambda w: p * w ** (1.0 / p) * (1.0 - w) ** (1.0 - 1.0 / p),
                delta[~underflow],
                np.exp(log_guess[~underflow]),
                1.0 - exponent.seam_w,
            )
        sine[upper] = np.exp(np.log1p(-w) / p)
        cosine[upper] = w ** (1.0 / p)

    return sine, cosine


def _sin_cos(exponent: PExponent, x: FloatArray):
    """Folds x onto the first quadrant and restores the signs."""
    pi = exponent.pi_p
    half = exponent.half_pi_p
    r = np.fmod(np.abs(x), 2.0 * pi)
    angle = np.select([r <= half, r <= pi, r <= pi + half], [r, pi - r, r - pi], 2.0 * pi - r)
    sine, cosine = _first_quadrant(exponent, angle)
    sine_sign = np.where(r <= pi, 1.0, -1.0) * np.where(x < 0, -1.0, 1.0)
    cosine_sign = np.where((r > half) & (r <= pi + half), -1.0, 1.0)
    return sine_sign * sine, cosine_sign * cosine


def __check_finite(values: FloatArray, x: ArrayLike):
    if not np.all(np.isfinite(values)):
        raise invalid_parameter("x", x, "a finite value")


def sin_p(p: PExponent | float, x: AngleValue):
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_sin_cos(exponent, values)[0], x)


def cos_p(p: PExponent | float, x: AngleValue):
    """Derivative of sin_p, equal to (1 − sin_p^p x)^(1/p) on the first quadrant."""
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_sin_cos(exponent, values)[1], x)


def sin_cos_p(p: PExponent | float, x: AngleValue):
    """@return: Both sin_p x and cos_p x, from a single inversion."""
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    sine, cosine = _sin_cos(exponent, values)
    return unwrap_scalar(sine, x), unwrap_scalar(cosine, x)


def tan_p(p: PExponent | float, x: AngleValue):
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    sine, cosine = _sin_cos(exponent, values)
    if np.any(cosine == 0):
        raise PoleError(f"tan_p has a pole at x = {float(values[cosine == 0][0])!r} (cos_p x = 0)")
    return unwrap_scalar(sine / cosine, x)


def _sinc_and_deficit(exponent: PExponent, x: FloatArray, *, with_deficit: bool = True):
    """@return: sinc_p x and 1 − sinc_p x, the latter accurate even where sinc_p rounds to 1."""
    p = exponent.p
    a1, a2 = exponent.sinc_coefficients
    ax = np.abs(x)
    sinc = np.ones_like(ax)
    deficit = np.zeros_like(ax)

    small = ax < SINC_SERIES_SWITCH
    w = ax[small] ** p
    deficit[small] = -(a1 * w + a2 * w * w)
    sinc[small] = 1.0 - deficit[small]

    rest = ~small
    if rest.any():
        ar = ax[rest]
        sine = _sin_cos(exponent, ar)[0]
        sinc_rest = sine / ar
        deficit_rest = 1.0 - sinc_rest
        near = ar <= exponent.chart_seam
        if with_deficit and near.any():
            excess = _arcsin_excess(p, sine[near] ** p)
            deficit_rest[near] = excess / (1.0 + excess)
        sinc[rest] = sinc_rest
        deficit[rest] = deficit_rest
    return sinc, deficit


def sinc_p(p: PExponent | float, x: AngleValue):
    """sin_p x / x, with value 1 at x = 0."""
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_sinc_and_deficit(exponent, values, with_deficit=False)[0], x)


def sinc_deficit(p: PExponent | float, x: AngleValue):
    """1 − sinc_p x, without the cancellation of the direct difference near x = 0."""
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_sinc_and_deficit(exponent, values)[1], x)


def sinc_deficit_ratio(p: PExponent | float, x: AngleValue):
    """
    (1 − sinc_p x)/|x|^p, equal to −a₁ at x = 0.

    Unlike `sinc_deficit`, it does not underflow to 0 where |x|^p does, so it keeps the sign of the
    deficit for large p.
    """
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_deficit_ratio(exponent, np.abs(values)), x)


def _deficit_ratio(exponent: PExponent, ax: FloatArray) -> FloatArray:
    p = exponent.p
    a1, a2 = exponent.sinc_coefficients
    ratio = np.full_like(ax, -a1)

    small = ax < SINC_SERIES_SWITCH
    ratio[small] = -(a1 + a2 * ax[small] ** p)

    rest = ~small
    if rest.any():
        ar = ax[rest]
        sine = _sin_cos(exponent, ar)[0]
        sinc = sine / ar
        with np.errstate(over="ignore"):
            ratio_rest = (1.0 - sinc) / ar**p
        near = ar <= exponent.chart_seam
        if near.any():
            # deficit = excess/(1 + excess) and w/x^p = sinc^p
            w = sine[near] ** p
            excess_ratio = _arcsin_excess_ratio(p, w)
            ratio_rest[near] = excess_ratio * sinc[near] ** p / (1.0 + w * excess_ratio)
        ratio[rest] = ratio_rest
    return ratio


def log_abs_sinc(p: PExponent | float, x: AngleValue):
    """ln|sinc_p x|, −inf at the roots."""
    exponent = as_exponent(p)
    values = as_float_array(x)
    __check_finite(values, x)
    return unwrap_scalar(_log_abs_sinc(exponent, values), x)


def _log_abs_sinc(exponent: PExponent, x: FloatArray) -> FloatArray:
    sinc, deficit = _sinc_and_deficit(exponent, x)
    with np.errstate(divide="ignore"):
        return np.where(deficit <= 0.5, np.log1p(-np.minimum(deficit, 0.5)), np.log(np.abs(sinc)))


SINC_SERIES_SWITCH = 1e-4
"""Below this |x|, sinc_p uses its two-term series"""
NEWTON_RTOL = 1e-14
NEWTON_MAX_ITERATIONS = 100
LOG_TINY = math.log(np.finfo(np.float64).tiny)
EXCESS_SERIES_MAX_TERMS = 200
EXCESS_SERIES_EPS = 1e-17
