"""
Adaptive Gauss-Kronrod integration with error estimates, and truncation of improper integrals
against explicit tail bounds.

All panels of a refinement round are evaluated in one vectorised call of the integrand, which
must therefore accept and return float64 arrays. Accepted panels are summed in order of
position so results do not depend on how the refinement unfolded.
"""

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma, gammaincc

from error_messages import QuadratureError, TailBoundError, invalid_parameter
from ptrig import PExponent, as_exponent, sinc_p
from utils import MACHINE_EPSILON, FloatArray, RealFunction, debug_log

SUBDIVISION_LIMIT = 10_000
MAX_DOUBLINGS = 12


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    subdivisions: int
    tail_remainder: float = 0.0
    converged: bool = True

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise QuadratureError(f"integral evaluated to a non-finite value ({self.value!r})")
        if self.err_est < 0 or self.tail_remainder < 0:
            raise QuadratureError("error estimate and tail remainder must be nonnegative")

    @property
    def total_error(self):
        return self.err_est + self.tail_remainder

    def to_dict(self):
        return {
            "value": self.value,
            "err_est": self.err_est,
            "tail_remainder": self.tail_remainder,
            "subdivisions": self.subdivisions,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class TailBound:
    alpha: float
    q: float
    bound: float


def _kronrod_panels(f: RealFunction, left: FloatArray, right: FloatArray):
    """@return: The 15-point Kronrod estimate, its error estimate and its rounding floor on every panel."""
    center = 0.5 * (left + right)
    half = 0.5 * (right - left)
    nodes = center[:, None] + half[:, None] * KRONROD_NODES[None, :]
    # Open rule: rounding must never land a node on a panel edge
    nodes = np.clip(nodes, np.nextafter(left, right)[:, None], np.nextafter(right, left)[:, None])
    values = np.asarray(f(nodes.ravel()), dtype=np.float64).reshape(nodes.shape)
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)][0]
        raise QuadratureError(f"integrand is not finite at x = {float(bad)!r}")

    kronrod = half * (values @ KRONROD_WEIGHTS)
    gauss = half * (values[:, GAUSS_INDEX] @ GAUSS_WEIGHTS)
    mean = (values @ KRONROD_WEIGHTS) / 2.0
    resabs = np.abs(half) * (np.abs(values) @ KRONROD_WEIGHTS)
    resasc = np.abs(half) * (np.abs(values - mean[:, None]) @ KRONROD_WEIGHTS)

    err = np.abs(kronrod - gauss)
    scale = (resasc != 0) & (err != 0)
    err[scale] = resasc[scale] * np.minimum(1.0, (200.0 * err[scale] / resasc[scale]) ** 1.5)
    rounding = 50.0 * MACHINE_EPSILON * resabs
    representable = resabs > np.finfo(np.float64).tiny / (50.0 * MACHINE_EPSILON)
    err[representable] = np.maximum(rounding[representable], err[representable])
    return kronrod, err, rounding


def __smoothed(f: RealFunction, a: float, b: float) -> RealFunction:
    """
    f(x) dx rewritten on v ∈ [−1, 1] through x = c + h(3v − v³)/2, which flattens both endpoints.
    Distances to the endpoints are computed directly to keep them accurate.
    """
    h = 0.5 * (b - a)
    low = np.nextafter(a, b)
    high = np.nextafter(b, a)

    def integrand(v: FloatArray) -> FloatArray:
        x = np.where(
            v > 0,
            b - h * 0.5 * (1.0 - v) ** 2 * (2.0 + v),
            a + h * 0.5 * (1.0 + v) ** 2 * (2.0 - v),
        )
        x = np.clip(x, low, high)
        return np.asarray(f(x), dtype=np.float64) * h * 1.5 * (1.0 - v) * (1.0 + v)

    return integrand


def __smoothed_position(a: float, b: float, x: float):
    s = (2.0 * x - a - b) / (b - a)
    return 2.0 * math.sin(math.asin(max(-1.0, min(1.0, s))) / 3.0)


def integrate(
    f: RealFunction,
    a: float,
    b: float,
    tol: float,
    *,
    breakpoints: Sequence[float] = (),
    smooth_ends: bool = False,
    limit: int = SUBDIVISION_LIMIT,
):
    """
    Adaptive bisection of [a, b] with the embedded Gauss 7 / Kronrod 15 pair.

    A panel is accepted once its error estimate is within its share of `tol` (proportional to width),
    within an even split of the unspent budget, or at its rounding floor;
    and refinement stops as soon as the summed estimate is within `tol`.

    @param breakpoints: Interior points that must be panel edges (kinks, sign changes, singularities).
    @param smooth_ends: Integrate in the variable v of x = c + h(3v − v³)/2, for integrable
        algebraic singularities at a or b.
    @param limit: Panel cap. Past it, the partial result is returned with `converged=False`.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise invalid_parameter("(a, b)", (a, b), "finite a < b")
    if not tol > 0:
        raise invalid_parameter("tol", tol, "tol > 0")

    interior = sorted({float(x) for x in breakpoints if a < x < b})
    if smooth_ends:
        integrand = __smoothed(f, a, b)
        edges = [-1.0, *(__smoothed_position(a, b, x) for x in interior), 1.0]
        edges = sorted(set(edges))
    else:
        integrand = f
        edges = [a, *interior, b]
    span = edges[-1] - edges[0]

    left = np.array(edges[:-1])
    right = np.array(edges[1:])
    done_left: list[FloatArray] = []
    done_value: list[FloatArray] = []
    done_err: list[FloatArray] = []
    accepted_err = 0.0
    accepted_count = 0
    converged = True
    rounds = 0

    while left.size:
        rounds += 1
        value, err, rounding = _kronrod_panels(integrand, left, right)
        width = right - left
        too_narrow = width <= MIN_PANEL_ULPS * MACHINE_EPSILON * np.maximum(
            np.maximum(np.abs(left), np.abs(right)), 1e-300
        )
        budget = 0.5 * max(tol - accepted_err, 0.0) / left.size
        settled = (err <= tol * width / span) | (err <= budget) | (err <= rounding) | too_narrow

        if accepted_err + err.sum() <= tol:
            settled[:] = True
        elif accepted_count + settled.sum() + 2 * (~settled).sum() > limit:
            converged = False
            settled[:] = True

        done_left.append(left[settled])
        done_value.append(value[settled])
        done_err.append(err[settled])
        accepted_err += float(err[settled].sum())
        accepted_count += int(settled.sum())

        pending = ~settled
        middle = 0.5 * (left[pending] + right[pending])
        left, right = (
            np.concatenate([left[pending], middle]),
            np.concatenate([middle, right[pending]]),
        )

    order = np.argsort(np.concatenate(done_left), kind="stable")
    values = np.concatenate(done_value)[order]
    errors = np.concatenate(done_err)[order]
    debug_log(
        f"integrate [{a!r}, {b!r}]: {accepted_count} panels in {rounds} rounds, "
        + f"err_est={float(errors.sum()):.3g}, converged={converged}"
    )
    return QuadResult(
        value=math.fsum(values),
        err_est=math.fsum(errors),
        subdivisions=accepted_count,
        converged=converged,
    )


def integrate_to_infinity(
    f: RealFunction,
    a: float,
    tol: float,
    tail: Callable[[float], float],
    *,
    period: float = 1.0,
    max_doublings: int = MAX_DOUBLINGS,
    breakpoint_spacing: float | None = None,
    fold: "Callable[[float, float], QuadResult] | None" = None,
    limit: int = SUBDIVISION_LIMIT,
):
    """
    ∫_a^∞ f, truncated at the first α in {a + period·2^k} whose tail bound is below tol/2.

    @param tail: Upper bound of ∫_α^∞ |f|, nonincreasing in α.
    @param breakpoint_spacing: Put panel edges on every multiple of this spacing inside [a, α].
    @param fold: Exact evaluation of ∫_α^∞ f, to within a given tolerance. Used at the last α
        of the sequence when the tail bound never gets small enough.
    """
    if not (math.isfinite(a) and tol > 0 and period > 0):
        raise invalid_parameter("(a, tol, period)", (a, tol, period), "finite a, tol > 0, period > 0")

    alpha = a
    remainder = math.inf
    for k in range(max_doublings + 1):
        alpha = a + period * 2.0**k
        remainder = tail(alpha)
        if remainder < tol / 2:
            break
    else:
        if fold is None:
            raise TailBoundError(
                f"no truncation point up to {alpha!r} brings the tail bound ({remainder:.3g}) below {tol / 2:.3g}"
            )

    breakpoints: FloatArray | tuple[()] = ()
    if breakpoint_spacing:
        first_index = math.floor(a / breakpoint_spacing) + 1
        last_index = math.ceil(alpha / breakpoint_spacing) - 1
        breakpoints = np.arange(first_index, last_index + 1) * breakpoint_spacing

    body = integrate(f, a, alpha, tol / 2, breakpoints=breakpoints, limit=limit)
    if remainder < tol / 2:
        debug_log(f"integrate_to_infinity: truncated at {alpha!r}, tail bound {remainder:.3g}")
        return QuadResult(
            value=body.value,
            err_est=body.err_est,
            subdivisions=body.subdivisions,
            tail_remainder=remainder,
            converged=body.converged,
        )

    debug_log(f"integrate_to_infinity: tail bound {remainder:.3g} too large at {alpha!r}, folding the tail")
    far = fold(alpha, tol / 2)  # pyright: ignore[reportOptionalCall]  # fold is not None past the loop
    return QuadResult(
        value=body.value + far.value,
        err_est=body.err_est + far.err_est,
        subdivisions=body.subdivisions + far.subdivisions,
        tail_remainder=far.tail_remainder,
        converged=body.converged and far.converged,
    )


def tail_bound(p: PExponent | float, alpha: float, q: float):
    """
    Upper bound of ∫_α^∞ |sinc_p x|^q dx:
    α^(1−q)/(q − 1) when α ≥ 1, (sinc_p α)^q (1 − α) + 1/(q − 1) when α < 1.
    """
    exponent = as_exponent(p)
    if not alpha > 0:
        raise invalid_parameter("alpha", alpha, "alpha > 0")
    if not q > 1:
        raise invalid_parameter("q", q, "q > 1")
    if alpha >= 1:
        bound = alpha ** (1.0 - q) / (q - 1.0)
    else:
        bound = float(sinc_p(exponent, alpha)) ** q * (1.0 - alpha) + 1.0 / (q - 1.0)
    return TailBound(alpha=float(alpha), q=float(q), bound=bound)


def phi_tail_bound(alpha: float, n: int, q: float):
    """
    Upper bound of ∫_α^∞ |ln|sinc_p x||^n |sinc_p x|^q dx, for any p.

    Uses |sinc_p x| ≤ 1/x, which makes the integrand at most (ln x)^n x^(−q) once α ≥ e^(n/q),
    whose integral is Γ(n + 1, (q − 1) ln α)/(q − 1)^(n + 1). Below that threshold (or α < 1) it
    returns infinity.
    """
    if n < 0 or not q > 1:
        raise invalid_parameter("(n, q)", (n, q), "n >= 0 and q > 1")
    if alpha < max(1.0, math.exp(n / q)):
        return math.inf
    z = (q - 1.0) * math.log(alpha)
    return float(gamma(n + 1) * gammaincc(n + 1, z) / (q - 1.0) ** (n + 1))

MIN_PANEL_ULPS = 64
"""Panels narrower than this many ulps of their position are not split further"""

# Gauss-Kronrod 7/15 abscissae and weights, from QUADPACK's qk15
__XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
__WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
__WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
KRONROD_NODES = np.concatenate([-__XGK[:7], [0.0], __XGK[6::-1]])
KRONROD_WEIGHTS = np.concatenate([__WGK[:7], [__WGK[7]], __WGK[6::-1]])
GAUSS_INDEX = np.array([1, 3, 5, 7, 9, 11, 13])
GAUSS_WEIGHTS = np.array([__WG[0], __WG[1], __WG[2], __WG[3], __WG[2], __WG[1], __WG[0]])
