"""One-parameter loss distributions compared against the maximum entropy law.

Every family here is a finite mixture of gamma laws sharing the rate theta,
with density poly(x) exp(-theta x) / Z on x >= 0. Writing the polynomial as
sum_k c_k x^k gives the closed forms

    Z    = sum_k c_k k! / theta^(k+1)
    S(x) = exp(-theta x) / Z * sum_k c_k sum_{j<=k} k!/j! x^j / theta^(k-j+1)
    mean = sum_k c_k (k+1)! / theta^(k+2) / Z

so each family only declares its coefficients.
"""

import abc
import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import factorial

from .. import quadrature
from ..exceptions import ParameterError, UnknownFamilyError
from ..maxent import MaxEntLomax
from ..schemas import GiniOrder, QuadratureSettings
from .base import Support, UnivariateModel


class PolyExponentialModel(UnivariateModel, abc.ABC):
    support = Support(0.0, math.inf, True, False)

    def __init__(self, theta: float):
        theta = float(theta)
        if not (math.isfinite(theta) and theta > 0):
            raise ParameterError(f"{self.family} needs theta > 0, got {theta!r}")
        self.theta = theta
        coefficients = np.asarray(self._coefficients(theta), dtype=float)
        degrees = np.arange(coefficients.size)
        self._density_poly = coefficients
        self._log_norm = math.log(
            float(coefficients @ (factorial(degrees) / theta ** (degrees + 1)))
        )
        survival = np.zeros_like(coefficients)
        for k, c_k in enumerate(coefficients):
            j = np.arange(k + 1)
            survival[: k + 1] += c_k * factorial(k) / (factorial(j) * theta ** (k - j + 1))
        self._survival_poly = survival
        self._mean = float(
            coefficients @ (factorial(degrees + 1) / theta ** (degrees + 2))
        ) / math.exp(self._log_norm)

    @staticmethod
    @abc.abstractmethod
    def _coefficients(theta: float) -> tuple[float, ...]:
        """Polynomial coefficients c_0, c_1, ... of the density kernel."""

    @property
    def params(self) -> tuple[float, ...]:
        return (self.theta,)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= 0
        safe = np.where(inside, x, 0.0)
        value = np.log(P.polyval(safe, self._density_poly)) - self.theta * safe
        return np.where(inside, value - self._log_norm, -np.inf)[()]

    def pdf(self, x):
        return np.exp(np.asarray(self.logpdf(x)))[()]

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        inside = x > 0
        safe = np.where(inside, x, 0.0)
        value = P.polyval(safe, self._survival_poly) * np.exp(
            -self.theta * safe - self._log_norm
        )
        return np.where(inside, np.clip(value, 0.0, 1.0), 1.0)[()]

    def cdf(self, x):
        return (1.0 - np.asarray(self.sf(x)))[()]

    def mean(self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE) -> float:
        return self._mean


class Exponential(PolyExponentialModel):
    """f(x) = theta exp(-theta x)."""

    family = "exponential"

    @staticmethod
    def _coefficients(theta):
        return (1.0,)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return (-np.log1p(-u) / self.theta)[()]


class Lindley(PolyExponentialModel):
    """f(x) = theta^2 (1 + x) exp(-theta x) / (1 + theta)."""

    family = "lindley"

    @staticmethod
    def _coefficients(theta):
        return (1.0, 1.0)


class Akash(PolyExponentialModel):
    """f(x) = theta^3 (1 + x^2) exp(-theta x) / (theta^2 + 2)."""

    family = "akash"

    @staticmethod
    def _coefficients(theta):
        return (1.0, 0.0, 1.0)


class Pranav(PolyExponentialModel):
    """f(x) = theta^4 (theta + x^3) exp(-theta x) / (theta^4 + 6)."""

    family = "pranav"

    @staticmethod
    def _coefficients(theta):
        return (theta, 0.0, 0.0, 1.0)


class Ishitha(PolyExponentialModel):
    """f(x) = theta^3 (theta + x^2) exp(-theta x) / (theta^3 + 2)."""

    family = "ishitha"

    @staticmethod
    def _coefficients(theta):
        return (theta, 0.0, 1.0)


class RamAwadh(PolyExponentialModel):
    """f(x) = theta^6 (theta + x^5) exp(-theta x) / (theta^6 + 120).

    Usually written with lambda in place of theta.
    """

    family = "ramawadh"

    @staticmethod
    def _coefficients(theta):
        return (theta, 0.0, 0.0, 0.0, 0.0, 1.0)


class Sujatha(PolyExponentialModel):
    """f(x) = theta^3 (1 + x + x^2) exp(-theta x) / (theta^2 + theta + 2)."""

    family = "sujatha"

    @staticmethod
    def _coefficients(theta):
        return (1.0, 1.0, 1.0)


class Uniform(UnivariateModel):
    """Uniform law on [lower, upper]; a reference model with known indices."""

    family = "uniform"
    n_params = 2

    def __init__(self, lower: float = 0.0, upper: float = 1.0):
        lower, upper = float(lower), float(upper)
        if not (math.isfinite(lower) and math.isfinite(upper) and upper > lower):
            raise ParameterError(f"Uniform needs lower < upper, got {lower}, {upper}")
        self.lower = lower
        self.upper = upper
        self.support = Support(lower, upper, True, True)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.lower, self.upper)

    def pdf(self, x):
        inside = self.support.contains(x)
        return np.where(inside, 1.0 / (self.upper - self.lower), 0.0)[()]

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self.lower) / (self.upper - self.lower), 0.0, 1.0)[()]

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        return (self.lower + np.clip(u, 0.0, 1.0) * (self.upper - self.lower))[()]

    def mean(self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE) -> float:
        return 0.5 * (self.lower + self.upper)


FAMILIES: dict[str, type[UnivariateModel]] = {
    MaxEntLomax.family: MaxEntLomax,
    Exponential.family: Exponential,
    Lindley.family: Lindley,
    Akash.family: Akash,
    Pranav.family: Pranav,
    Ishitha.family: Ishitha,
    RamAwadh.family: RamAwadh,
    Sujatha.family: Sujatha,
}

COMPARISON_FAMILIES: tuple[str, ...] = tuple(FAMILIES)


def get_family(name: str) -> type[UnivariateModel]:
    try:
        return FAMILIES[name.lower()]
    except KeyError as err:
        raise UnknownFamilyError(name, COMPARISON_FAMILIES) from err


def build_model(name: str, theta: float, nu: float | None = None) -> UnivariateModel:
    """Instantiate a registered family.

    For ``maxentlomax`` theta is the entropy order alpha and the Gini order nu
    is required; every other family rejects nu.
    """
    family = get_family(name)
    if family is MaxEntLomax:
        if nu is None:
            raise ParameterError("maxentlomax needs a Gini order nu")
        return MaxEntLomax(theta, GiniOrder.coerce(nu).nu)
    if nu is not None:
        raise ParameterError(f"{family.family} takes no Gini order")
    return family(theta)


def pdf(model: UnivariateModel, x):
    return model.pdf(x)


def cdf(model: UnivariateModel, x):
    return model.cdf(x)


def loglik(model: UnivariateModel, sample) -> float:
    return model.loglik(sample)
