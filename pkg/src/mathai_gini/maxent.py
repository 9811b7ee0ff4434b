"""Maximum entropy laws under Gini-type constraints and Mathai's pathway model.

Maximizing Mathai's entropy of order alpha subject to a fixed generalized Gini
index of order nu leads to the first order ODE

    f(x)^(2 - alpha) - lambda2 * S(x) - lambda3 * S(x)^nu = 0,    f = -S'

where S is the survival function. With lambda3 = 0 the solution has bounded
support (``BoundedMaxEnt``); with lambda2 = 0 it is a unit scale Lomax law with
shape beta = (alpha - 2) / (2 - nu - alpha) (``MaxEntLomax``). Constraining
the Gini mean difference instead is the nu = 2 case. When both multipliers are
non-zero there is no closed form and only ``euler_ode_residual`` is offered
to check candidate models.
"""

import logging
import math

import numpy as np
from scipy.special import xlogy

from . import quadrature
from .distributions.base import Support, UnivariateModel
from .exceptions import (
    FitError,
    InfiniteMeanError,
    NegativeValueError,
    NormalizationError,
    ParameterError,
    ZeroMeanError,
)
from .schemas import (
    ConstraintDiagnostics,
    EntropyOrder,
    GiniOrder,
    QuadratureSettings,
    Sample,
)

logger = logging.getLogger(__name__)


class MaxEntLomax(UnivariateModel):
    """Maximum Mathai entropy law under a generalized Gini constraint.

    The density is beta * (1 + x)^-(beta + 1) on x >= 0, a Lomax law with
    unit scale whose shape is fixed by the entropy order alpha and the Gini
    order nu. Valid pairs satisfy alpha < 2, alpha != 1, nu > 1 and
    nu + alpha > 2.
    """

    family = "maxentlomax"
    support = Support(0.0, math.inf, True, False)

    def __init__(self, alpha: float, nu: float):
        order = EntropyOrder.coerce(alpha)
        gini_order = GiniOrder.coerce(nu)
        if order.is_shannon_limit:
            raise ParameterError("The maximum entropy Lomax law needs alpha != 1")
        alpha, nu = order.alpha, gini_order.nu
        if nu + alpha <= 2:
            raise ParameterError(
                f"nu + alpha must exceed 2 for a proper survival function, "
                f"got alpha={alpha!r}, nu={nu!r}"
            )
        beta = (alpha - 2) / (2 - nu - alpha)
        if not (math.isfinite(beta) and beta > 0):
            raise ParameterError(f"Derived Lomax shape must be positive, got {beta!r}")
        self.alpha = alpha
        self.nu = nu
        self.beta = beta

    @classmethod
    def from_beta(cls, beta: float, nu: float) -> "MaxEntLomax":
        """Build the law whose Lomax shape is ``beta`` for Gini order ``nu``."""
        beta = float(beta)
        if not (math.isfinite(beta) and beta > 0):
            raise ParameterError(f"Lomax shape must be positive, got {beta!r}")
        alpha = (2 + 2 * beta - beta * nu) / (1 + beta)
        return cls(alpha, nu)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.alpha,)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= 0
        safe = np.where(inside, x, 0.0)
        value = self.beta * np.exp(-(self.beta + 1) * np.log1p(safe))
        return np.where(inside, value, 0.0)[()]

    def density_from_orders(self, x):
        """Density written directly in terms of (alpha, nu)."""
        x = np.asarray(x, dtype=float)
        inside = x >= 0
        safe = np.where(inside, x, 0.0)
        denominator = 2 - self.nu - self.alpha
        value = ((self.alpha - 2) / denominator) * (1 + safe) ** (self.nu / denominator)
        return np.where(inside, value, 0.0)[()]

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= 0
        safe = np.where(inside, x, 0.0)
        value = math.log(self.beta) - (self.beta + 1) * np.log1p(safe)
        return np.where(inside, value, -np.inf)[()]

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.where(x > 0, x, 0.0)
        return (-np.expm1(-self.beta * np.log1p(safe)))[()]

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.where(x > 0, x, 0.0)
        return np.exp(-self.beta * np.log1p(safe))[()]

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return np.expm1(-np.log1p(-u) / self.beta)[()]

    def mean(self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE) -> float:
        if self.beta <= 1:
            raise InfiniteMeanError(
                f"{self.describe()} has Lomax shape {self.beta:.7g} <= 1 "
                f"and therefore an infinite mean"
            )
        return 1.0 / (self.beta - 1)

    @property
    def lagrange_multiplier(self) -> float:
        """Multiplier of the Gini constraint, beta^(2 - alpha)."""
        return self.beta ** (2 - self.alpha)

    def optimality_residual(self, x):
        return euler_ode_residual(
            self, self.alpha, self.nu, 0.0, self.lagrange_multiplier, x
        )

    def constraint_diagnostics(self) -> ConstraintDiagnostics:
        """Mean, survival power integrals and inequality indices in closed form."""
        mean = self.mean()
        eta = 1.0 / (self.nu * self.beta - 1)
        phi = 1.0 / (2 * self.beta - 1)
        return ConstraintDiagnostics(
            mean=mean,
            eta=eta,
            generalized_gini=1.0 - eta / mean,
            phi=phi,
            gmd=2.0 * (mean - phi),
        )

    def describe(self) -> str:
        return f"{self.family}(alpha={self.alpha:.7g}, nu={self.nu:.7g}, beta={self.beta:.7g})"


class BoundedMaxEnt(UnivariateModel):
    """Maximum entropy law when only the mean multiplier survives.

    Its survival function
    S(x) = [lambda2^(1/(2-alpha)) (1-alpha) (c-x) / (2-alpha)]^((2-alpha)/(1-alpha))
    decreases from 1 to 0 on [0, c]; S(0) = 1 ties lambda2 to c.
    """

    family = "boundedmaxent"
    n_params = 2

    def __init__(self, alpha: float, c: float):
        order = EntropyOrder.coerce(alpha)
        if order.alpha >= 1:
            raise ParameterError(
                f"The bounded solution needs alpha < 1, got {order.alpha!r}"
            )
        c = float(c)
        if not (math.isfinite(c) and c > 0):
            raise ParameterError(f"Support end c must be positive, got {c!r}")
        self.alpha = order.alpha
        self.c = c
        self.lambda2 = ((2 - self.alpha) / ((1 - self.alpha) * c)) ** (2 - self.alpha)
        self.support = Support(0.0, c, True, True)

    @classmethod
    def from_multiplier(cls, alpha: float, lambda2: float) -> "BoundedMaxEnt":
        if not (math.isfinite(lambda2) and lambda2 > 0):
            raise ParameterError(f"Multiplier must be positive, got {lambda2!r}")
        alpha = EntropyOrder.coerce(alpha).alpha
        c = (2 - alpha) / ((1 - alpha) * lambda2 ** (1 / (2 - alpha)))
        return cls(alpha, c)

    @property
    def params(self) -> tuple[float, ...]:
        return (self.alpha, self.c)

    @property
    def _rate(self) -> float:
        return self.lambda2 ** (1 / (2 - self.alpha)) * (1 - self.alpha) / (2 - self.alpha)

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        gap = np.clip(self.c - x, 0.0, self.c)
        value = (self._rate * gap) ** ((2 - self.alpha) / (1 - self.alpha))
        return np.clip(value, 0.0, 1.0)[()]

    def cdf(self, x):
        return (1.0 - np.asarray(self.sf(x)))[()]

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = self.support.contains(x)
        gap = np.clip(self.c - x, 0.0, self.c)
        value = self.lambda2 ** (1 / (2 - self.alpha)) * (self._rate * gap) ** (
            1 / (1 - self.alpha)
        )
        return np.where(inside, value, 0.0)[()]

    def mean(self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE) -> float:
        # integral of (1 - x/c)^k over [0, c]
        exponent = (2 - self.alpha) / (1 - self.alpha)
        return self.c / (exponent + 1)


class PathwayModel(UnivariateModel):
    """Mathai's pathway density c x^(gamma-1) [1 - a(1-alpha) x^delta]^(1/(1-alpha)).

    alpha < 1 gives a generalized type-1 beta law on a bounded interval,
    alpha > 1 a generalized type-2 beta law on (0, inf) and the alpha -> 1
    limit the generalized gamma law c x^(gamma-1) exp(-a x^delta), built with
    ``PathwayModel.gamma_limit``. The normalizing constant is always obtained
    by adaptive quadrature.
    """

    family = "pathway"
    n_params = 4

    def __init__(
        self,
        a: float,
        delta: float,
        gamma: float,
        alpha: float,
        settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE,
    ):
        if float(alpha) == 1:
            raise ParameterError(
                "Pathway parameter alpha = 1 is the gamma limit, "
                "use PathwayModel.gamma_limit()"
            )
        self._setup(a, delta, gamma, float(alpha), settings)

    @classmethod
    def gamma_limit(
        cls,
        a: float,
        delta: float,
        gamma: float,
        settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE,
    ) -> "PathwayModel":
        model = cls.__new__(cls)
        model._setup(a, delta, gamma, 1.0, settings)
        return model

    def _setup(self, a, delta, gamma, alpha, settings):
        for name, value in (("a", a), ("delta", delta), ("gamma", gamma)):
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"Pathway parameter {name} must be positive")
        if not math.isfinite(alpha):
            raise ParameterError("Pathway parameter alpha must be finite")
        self.a = float(a)
        self.delta = float(delta)
        self.gamma = float(gamma)
        self.alpha = alpha
        self.settings = settings
        if alpha < 1:
            upper = (self.a * (1 - alpha)) ** (-1 / self.delta)
            self.support = Support(0.0, upper, self.gamma >= 1, False)
        else:
            self.support = Support(0.0, math.inf, self.gamma >= 1, False)
            if alpha > 1 and self.gamma >= self.delta / (alpha - 1):
                raise NormalizationError(
                    f"Pathway density is not normalizable: gamma={self.gamma} must be "
                    f"below delta/(alpha-1)={self.delta / (alpha - 1)}"
                )
        self.c_norm = 1.0
        mass = quadrature.integrate(
            lambda t: float(self._kernel(t)), 0.0, self.support.upper, settings
        )
        if not (math.isfinite(mass) and mass > 0):
            raise NormalizationError(f"Pathway kernel has mass {mass!r}")
        self.c_norm = 1.0 / mass
        # re-integrate over a partition that does not share the constant's breakpoints
        split = min(0.68 * self.a ** (-1 / self.delta), 0.5 * self.support.upper)
        total = self._mass_between(0.0, split) + self._mass_between(
            split, self.support.upper
        )
        if abs(total - 1.0) > settings.normalization_tol:
            raise NormalizationError(
                f"Normalized pathway density integrates to {total!r} "
                f"(split at {split:.7g})"
            )
        logger.debug(f"{self.describe()} normalizing constant {self.c_norm!r}")

    @property
    def params(self) -> tuple[float, ...]:
        return (self.a, self.delta, self.gamma, self.alpha)

    def _kernel(self, x):
        x = np.asarray(x, dtype=float)
        inside = self.support.contains(x)
        safe = np.where(inside, x, 1.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            log_value = xlogy(self.gamma - 1, safe)
            if self.alpha == 1:
                log_value = log_value - self.a * safe**self.delta
            else:
                log_value = log_value + np.log1p(
                    -self.a * (1 - self.alpha) * safe**self.delta
                ) / (1 - self.alpha)
            value = np.exp(log_value)
        return np.where(inside & np.isfinite(value), value, 0.0)[()]

    def pdf(self, x):
        return (self.c_norm * np.asarray(self._kernel(x)))[()]

    def _mass_between(self, lower: float, upper: float) -> float:
        return quadrature.integrate(
            lambda t: float(self.pdf(t)), lower, upper, self.settings
        )

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        flat = [
            min(1.0, self._mass_between(0.0, min(v, self.support.upper))) if v > 0 else 0.0
            for v in x.ravel()
        ]
        return np.asarray(flat).reshape(x.shape)[()]

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        flat = [
            min(1.0, self._mass_between(max(v, 0.0), self.support.upper))
            if v < self.support.upper else 0.0
            for v in x.ravel()
        ]
        return np.asarray(flat).reshape(x.shape)[()]

    def describe(self) -> str:
        return (
            f"{self.family}(a={self.a:.7g}, delta={self.delta:.7g}, "
            f"gamma={self.gamma:.7g}, alpha={self.alpha:.7g})"
        )


def pathway_density(model: PathwayModel, x):
    return model.pdf(x)


def maxent_lomax_pdf(model: MaxEntLomax, x):
    return model.pdf(x)


def maxent_lomax_cdf(model: MaxEntLomax, x):
    return model.cdf(x)


def bounded_maxent_survival(model: BoundedMaxEnt, x):
    """Survival of the bounded solution; only points of [0, c] are accepted."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > model.c)):
        raise ParameterError(f"x must lie in [0, {model.c}]")
    return model.sf(x)


def euler_ode_residual(
    model: UnivariateModel,
    alpha: float,
    nu: float,
    lambda2: float,
    lambda3: float,
    x,
):
    """Residual f^(2-alpha) - lambda2 S - lambda3 S^nu of the maximum entropy ODE.

    Zero on the support certifies that ``model`` solves the stationarity
    condition for the given multipliers; any other value is returned as is.
    """
    order = EntropyOrder.coerce(alpha)
    if order.is_shannon_limit:
        raise ParameterError("The residual needs alpha != 1")
    gini_order = GiniOrder.coerce(nu)
    density = np.asarray(model.pdf(x), dtype=float)
    survival = np.asarray(model.sf(x), dtype=float)
    return (
        density ** (2 - order.alpha)
        - lambda2 * survival
        - lambda3 * survival**gini_order.nu
    )[()]


def mle_maxent_lomax(sample: Sample, nu: float) -> MaxEntLomax:
    """Closed form maximum likelihood fit of the unit scale Lomax shape.

    beta_hat = n / sum(log(1 + x_i)) and alpha_hat follows from inverting
    beta = (alpha - 2) / (2 - nu - alpha).
    """
    values = sample.array
    if np.any(values < 0):
        raise NegativeValueError(
            f"Sample {sample.name!r} has negative observations, "
            f"the Lomax law lives on x >= 0"
        )
    total = float(np.sum(np.log1p(values)))
    if total <= 0:
        raise ZeroMeanError(f"Sample {sample.name!r} is identically zero")
    beta = sample.n / total
    try:
        model = MaxEntLomax.from_beta(beta, nu)
    except ParameterError as err:
        alpha = (2 + 2 * beta - beta * nu) / (1 + beta)
        raise FitError(
            f"Estimated entropy order leaves the admissible region: {err}",
            trace={"beta": beta, "alpha": alpha, "nu": nu},
        ) from err
    logger.info(f"maxentlomax fit on {sample.name!r}: {model.describe()}")
    return model
