import abc
import dataclasses
import logging
import math
from typing import Callable, ClassVar

import numpy as np

from .. import quadrature
from ..exceptions import (
    DivergentIntegralError,
    InfiniteMeanError,
    NumericalError,
    ZeroDensityError,
)
from ..schemas import QuadratureSettings, Sample

logger = logging.getLogger(__name__)

# survival levels at which the tail growth test samples partial integrals
_GROWTH_TEST_CUTOFFS = (1e-4, 1e-8)


@dataclasses.dataclass(frozen=True)
class Support:
    lower: float = 0.0
    upper: float = math.inf
    lower_closed: bool = True
    upper_closed: bool = False

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        above = x >= self.lower if self.lower_closed else x > self.lower
        below = x <= self.upper if self.upper_closed else x < self.upper
        return above & below

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.upper)


class UnivariateModel(abc.ABC):
    """Common contract of every continuous distribution in mathai-gini.

    Subclasses implement ``pdf`` and ``cdf`` over numpy arrays; everything else
    has a generic implementation that closed forms may override. Methods
    accept scalars or arrays and return numpy scalars for scalar input.
    """

    family: ClassVar[str]
    n_params: ClassVar[int] = 1
    support: Support = Support()

    @property
    @abc.abstractmethod
    def params(self) -> tuple[float, ...]:
        ...

    @abc.abstractmethod
    def pdf(self, x):
        ...

    @abc.abstractmethod
    def cdf(self, x):
        ...

    def sf(self, x):
        return 1.0 - self.cdf(x)

    def logpdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))

    def loglik(self, sample: Sample) -> float:
        """Sum of log densities; a zero density at an observation is an error."""
        values = sample.array
        logs = np.asarray(self.logpdf(values), dtype=float)
        bad = np.flatnonzero(~np.isfinite(logs))
        if bad.size:
            index = int(bad[0])
            raise ZeroDensityError(index, float(values[index]), self.family)
        return float(np.sum(logs))

    def upper_truncation(self, cutoff: float) -> float:
        return quadrature.upper_truncation(
            self.sf, self.support.lower if math.isfinite(self.support.lower) else 0.0,
            self.support.upper, cutoff,
        )

    def lower_truncation(self, cutoff: float) -> float:
        return quadrature.lower_truncation(
            self.cdf, self.support.lower,
            self.support.upper if math.isfinite(self.support.upper) else 0.0,
            cutoff,
        )

    def truncated_support(self, settings: QuadratureSettings) -> tuple[float, float]:
        cutoff = settings.tail_cutoff_survival
        return self.lower_truncation(cutoff), self.upper_truncation(cutoff)

    def quantile(self, u):
        """Inverse CDF by bisection; u = 0 and u = 1 map to the support ends."""
        u = np.asarray(u, dtype=float)
        interior = (u > 0) & (u < 1)
        tail = float(np.min(1.0 - u[interior])) if np.any(interior) else 0.5
        cutoff = min(1e-12, 0.5 * tail)
        lower = self.lower_truncation(cutoff)
        upper = self.upper_truncation(cutoff)
        result = quadrature.bisect_quantile(self.cdf, np.clip(u, 0, 1), lower, upper)
        result = np.where(u <= 0, self.support.lower, result)
        result = np.where(u >= 1, self.support.upper, result)
        return result[()]

    def total_probability(
        self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE
    ) -> float:
        """Integral of the density, with the tails beyond truncation taken from the CDF."""
        lower, upper = self.truncated_support(settings)
        body = quadrature.integrate(lambda t: float(self.pdf(t)), lower, upper, settings)
        left = float(self.cdf(lower)) if not math.isfinite(self.support.lower) else 0.0
        right = float(self.sf(upper)) if not math.isfinite(self.support.upper) else 0.0
        return body + left + right

    def integrate_support(
        self,
        fn: Callable[[float], float],
        settings: QuadratureSettings,
        *,
        start: float | None = None,
        divergence: type[NumericalError] = DivergentIntegralError,
        what: str = "integral",
    ) -> float:
        """Integrate ``fn`` over the support, refusing heavy upper tails.

        The partial integrals up to the points where the survival falls to
        1e-4, 1e-8 and the configured cutoff are compared: when the last
        increment is not smaller than the previous one the integrand decays no
        faster than 1/x and ``divergence`` is raised. Otherwise the remainder
        beyond the last point is added, since a power of the density below one
        decays far slower than the survival function.
        """
        if start is None:
            start = self.lower_truncation(settings.tail_cutoff_survival)
        cutoffs = [*_GROWTH_TEST_CUTOFFS, settings.tail_cutoff_survival]
        ends = [max(self.upper_truncation(c), start) for c in cutoffs]
        partial = []
        previous_end, running = start, 0.0
        try:
            for end in ends:
                running += quadrature.integrate(fn, previous_end, end, settings)
                partial.append(running)
                previous_end = end
        except DivergentIntegralError as err:
            raise divergence(f"The {what} of {self.describe()} diverges: {err}") from err
        first_step = abs(partial[1] - partial[0])
        last_step = abs(partial[2] - partial[1])
        logger.debug(
            f"{self.family} {what} growth test: ends={ends}, partials={partial}, "
            f"steps=({first_step}, {last_step})"
        )
        threshold = max(settings.abs_tol, settings.rel_tol * abs(partial[-1]))
        if last_step > threshold and last_step >= first_step:
            raise divergence(f"The {what} of {self.describe()} diverges")
        if math.isinf(self.support.upper):
            try:
                remainder = quadrature.integrate(fn, ends[-1], math.inf, settings)
            except DivergentIntegralError as err:
                raise divergence(
                    f"The {what} of {self.describe()} has no finite tail: {err}"
                ) from err
            logger.debug(f"{self.family} {what} tail beyond {ends[-1]}: {remainder}")
            return partial[-1] + remainder
        return partial[-1]

    def mean(self, settings: QuadratureSettings = quadrature.DEFAULT_QUADRATURE) -> float:
        """Mean as the integral of the survival function."""
        start = max(self.support.lower, 0.0)
        positive = start + self.integrate_support(
            lambda t: float(self.sf(t)),
            settings,
            start=start,
            divergence=InfiniteMeanError,
            what="mean",
        )
        if self.support.lower < 0:
            lower = self.lower_truncation(settings.tail_cutoff_survival)
            positive -= quadrature.integrate(
                lambda t: float(self.cdf(t)), lower, min(0.0, self.support.upper),
                settings,
            )
        return positive

    def describe(self) -> str:
        values = ", ".join(f"{p:.7g}" for p in self.params)
        return f"{self.family}({values})"

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"
