"""Adaptive integration, tail truncation and quantile inversion helpers.

Everything here works on plain callables so the distribution classes, the
entropy functionals and the inequality indices can share one integration
policy, driven by ``QuadratureSettings``.

When QUADPACK warns (subdivision budget exhausted, roundoff detected) the
piece is still accepted as long as its error estimate stays within
``QUADPACK_WARNING_SLACK`` times the requested tolerance; beyond that a
``DivergentIntegralError`` is raised. Integrable singularities at a support
end make QUADPACK warn while its estimate is already accurate to a few
orders of the requested tolerance.
"""

import logging
import math
from typing import Callable

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize

from .exceptions import DivergentIntegralError, NumericalError
from .schemas import QuadratureSettings

logger = logging.getLogger(__name__)

# ratio between an integration range and its start above which the range gets
# split at powers of ten
_DECADE_SPLIT_RATIO = 1e3
_MAX_DOUBLINGS = 1100
_BISECTION_STEPS = 200
_TRUNCATION_RTOL = 1e-8

QUADPACK_WARNING_SLACK = 1e3

DEFAULT_QUADRATURE = QuadratureSettings()


def _segments(lower: float, upper: float) -> list[tuple[float, float]]:
    """Split [lower, upper] at powers of ten so heavy tails get their own pieces."""
    if math.isinf(upper):
        if lower < 1.0:
            return [(lower, 1.0), (1.0, upper)]
        return [(lower, upper)]
    start = max(lower, 1.0)
    if upper / start < _DECADE_SPLIT_RATIO:
        return [(lower, upper)]
    edges = [lower] if lower < 1.0 else []
    edge = 10.0 ** math.floor(math.log10(start))
    while edge < upper:
        if edge > lower:
            edges.append(edge)
        edge *= 10.0
    edges.append(upper)
    if edges[0] != lower:
        edges.insert(0, lower)
    return [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def integrate(
    fn: Callable[[float], float],
    lower: float,
    upper: float,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> float:
    """Integrate ``fn`` over [lower, upper] with scipy's adaptive QUADPACK.

    Raises ``DivergentIntegralError`` when QUADPACK reports a problem and its
    error estimate misses the requested tolerance by more than
    ``QUADPACK_WARNING_SLACK``.
    """
    if upper <= lower:
        return 0.0
    total = 0.0
    for a, b in _segments(lower, upper):
        value, abserr, _info, *problem = sp_integrate.quad(
            fn,
            a,
            b,
            epsabs=settings.abs_tol,
            epsrel=settings.rel_tol,
            limit=settings.max_subdivisions,
            full_output=1,
        )
        if not math.isfinite(value):
            raise DivergentIntegralError(
                f"Integral over [{a}, {b}] is not finite ({value})"
            )
        if problem:
            allowed = QUADPACK_WARNING_SLACK * max(
                settings.abs_tol, settings.rel_tol * abs(value)
            )
            if abserr > allowed:
                raise DivergentIntegralError(
                    f"Integral over [{a}, {b}] did not converge within "
                    f"{settings.max_subdivisions} subdivisions "
                    f"(estimate {value}, error {abserr}): {problem[0]}"
                )
            logger.debug(f"accepting quadrature with warning on [{a}, {b}]: {problem[0]}")
        total += value
    return total


def upper_truncation(
    sf: Callable[[float], float], start: float, upper: float, cutoff: float
) -> float:
    """Return the point where the survival ``sf`` falls to ``cutoff``.

    Bounded supports return their upper end. Otherwise the candidate point is
    doubled until the survival function drops below the cutoff and the
    crossing is then located with Brent's method inside the last doubling, so
    distinct cutoffs give distinct points.
    """
    if math.isfinite(upper):
        return upper
    previous = start
    point = max(1.0, start + 1.0)
    for _ in range(_MAX_DOUBLINGS):
        if sf(point) < cutoff:
            break
        previous, point = point, 2.0 * point
    else:
        raise NumericalError(f"Survival function never falls below {cutoff}")
    if float(sf(previous)) < cutoff:
        return point
    crossing = optimize.brentq(
        lambda t: float(sf(t)) - cutoff, previous, point, rtol=_TRUNCATION_RTOL
    )
    logger.debug(f"upper truncation at {crossing} for cutoff {cutoff}")
    return crossing


def lower_truncation(
    cdf: Callable[[float], float], lower: float, end: float, cutoff: float
) -> float:
    if math.isfinite(lower):
        return lower
    point = min(-1.0, end - 1.0)
    for _ in range(_MAX_DOUBLINGS):
        if cdf(point) < cutoff:
            return point
        point *= 2.0
    raise NumericalError(f"Distribution function never falls below {cutoff}")


def bisect_quantile(
    cdf: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    lower: float,
    upper: float,
    xtol: float = 1e-12,
) -> np.ndarray:
    """Vectorized bisection for x with cdf(x) = u inside [lower, upper].

    ``cdf`` must be non-decreasing and accept numpy arrays.
    """
    u = np.asarray(u, dtype=float)
    lo = np.full(u.shape, float(lower))
    hi = np.full(u.shape, float(upper))
    for step in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= xtol * (1.0 + np.abs(mid))):
            logger.debug(f"bisection converged after {step + 1} steps")
            break
    return 0.5 * (lo + hi)
