"""Mathai's entropy of order alpha and its Shannon limit.

For a probability vector P = (p_1, ..., p_k) and alpha < 2, alpha != 1

    M_alpha(P) = (sum_i p_i^(2 - alpha) - 1) / (alpha - 1)

and for a density f the sum becomes the integral of f^(2 - alpha). Cells with
p_i = 0 contribute nothing. As alpha -> 1 both forms tend to the Shannon
entropy, which is exposed through separate functions because it is a limit
and not a value of the generalized formula.
"""

import logging
import math
from typing import Sequence

import numpy as np

from . import quadrature
from .distributions.base import UnivariateModel
from .exceptions import NormalizationError, ShannonLimitError
from .schemas import EntropyOrder, ProbVector, QuadratureSettings

logger = logging.getLogger(__name__)


def _generalized_order(alpha: EntropyOrder | float, operation: str) -> EntropyOrder:
    if not isinstance(alpha, EntropyOrder) and float(alpha) == 1:
        raise ShannonLimitError(operation)
    order = EntropyOrder.coerce(alpha)
    if order.is_shannon_limit:
        raise ShannonLimitError(operation)
    return order


def _prob_vector(p: ProbVector | Sequence[float]) -> ProbVector:
    return p if isinstance(p, ProbVector) else ProbVector(tuple(p))


def mathai_discrete(p: ProbVector | Sequence[float], alpha: EntropyOrder | float) -> float:
    """Mathai's entropy of a multinomial population.

    Evaluated as sum_i p_i expm1((1 - alpha) ln p_i) / (alpha - 1), which is
    the defining formula rewritten with sum_i p_i = 1 and stays accurate
    close to alpha = 1.
    """
    order = _generalized_order(alpha, "mathai_discrete")
    values = _prob_vector(p).array
    positive = values[values > 0]
    terms = positive * np.expm1((1 - order.alpha) * np.log(positive))
    return math.fsum(terms) / (order.alpha - 1)


def shannon_discrete(p: ProbVector | Sequence[float]) -> float:
    values = _prob_vector(p).array
    positive = values[values > 0]
    return -math.fsum(positive * np.log(positive))


def _check_normalization(f: UnivariateModel, settings: QuadratureSettings) -> None:
    total = f.total_probability(settings)
    if abs(total - 1.0) > settings.normalization_tol:
        raise NormalizationError(
            f"{f.describe()} integrates to {total!r}, not 1 within "
            f"{settings.normalization_tol}"
        )


def mathai_continuous(
    f: UnivariateModel,
    alpha: EntropyOrder | float,
    settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE,
) -> float:
    """Mathai's entropy of a density, (integral of f^(2-alpha) - 1) / (alpha - 1).

    The integral runs over the whole support, the tail beyond the survival
    cutoff included. A power of the density that does not decay fast enough
    raises ``DivergentIntegralError``.
    """
    order = _generalized_order(alpha, "mathai_continuous")
    _check_normalization(f, settings)
    power = 2 - order.alpha

    def integrand(t: float) -> float:
        density = float(f.pdf(t))
        return density**power if density > 0 else 0.0

    integral = f.integrate_support(
        integrand, settings, what=f"power {power:g} of the density"
    )
    logger.debug(f"integral of f^{power:g} for {f.describe()}: {integral!r}")
    return (integral - 1.0) / (order.alpha - 1)


def shannon_continuous(
    f: UnivariateModel,
    settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE,
) -> float:
    """Differential entropy -integral of f ln f, the alpha -> 1 limit."""
    _check_normalization(f, settings)

    def integrand(t: float) -> float:
        density = float(f.pdf(t))
        return -density * math.log(density) if density > 0 else 0.0

    return f.integrate_support(integrand, settings, what="differential entropy")


def entropy(
    source: ProbVector | UnivariateModel,
    alpha: EntropyOrder | float,
    settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE,
) -> float:
    """Dispatch to the discrete or continuous form, alpha = 1 meaning Shannon."""
    shannon = (
        alpha.is_shannon_limit if isinstance(alpha, EntropyOrder) else float(alpha) == 1
    )
    if isinstance(source, UnivariateModel):
        if shannon:
            return shannon_continuous(source, settings)
        return mathai_continuous(source, alpha, settings)
    if shannon:
        return shannon_discrete(source)
    return mathai_discrete(source, alpha)
