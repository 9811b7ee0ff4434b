"""Value types shared across mathai-gini.

Small immutable domain values (orders, probability vectors, samples) are
frozen dataclasses that validate on construction and raise the package's own
exceptions. Records that get serialized (settings sections, Lorenz points, fit
reports) are pydantic models.
"""

import dataclasses
import enum
import math
from typing import List, Optional, Sequence

import numpy as np
import pydantic

from .exceptions import (
    EmptySampleError,
    ParameterError,
    SampleParseError,
)

PROBABILITY_TOLERANCE = 1e-12


class KSMethod(enum.Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"
    AUTO = "auto"


class FitMethod(enum.Enum):
    AUTO = "auto"
    NUMERICAL = "numerical"


class OutputFormat(enum.Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class ComparisonEngine(enum.Enum):
    LOCAL = "local"
    PREFECT = "prefect"


class InequalityIndex(enum.Enum):
    GINI = "gini"
    GENERALIZED_GINI = "ggini"
    GMD = "gmd"
    LORENZ = "lorenz"


class SampleSource(enum.Enum):
    BUILTIN = "builtin"
    FILE = "file"


@dataclasses.dataclass(frozen=True)
class EntropyOrder:
    """Order alpha of Mathai's entropy.

    ``1 - alpha`` is the strength of information carried by the distribution.
    Alpha = 1 is only reachable through ``EntropyOrder.shannon_limit()``, which
    marks the Shannon limit rather than a generalized order.
    """

    alpha: float
    is_shannon_limit: bool = False

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha >= 2:
            raise ParameterError(f"Entropy order must be < 2, got {self.alpha!r}")
        if self.alpha == 1 and not self.is_shannon_limit:
            raise ParameterError(
                "Entropy order alpha = 1 is the Shannon limit, "
                "build it with EntropyOrder.shannon_limit()"
            )
        if self.is_shannon_limit and self.alpha != 1:
            raise ParameterError("The Shannon limit marker must have alpha = 1")

    @classmethod
    def shannon_limit(cls) -> "EntropyOrder":
        return cls(1.0, is_shannon_limit=True)

    @classmethod
    def coerce(cls, value: "EntropyOrder | float") -> "EntropyOrder":
        if isinstance(value, cls):
            return value
        return cls(float(value))


@dataclasses.dataclass(frozen=True)
class GiniOrder:
    """Order nu of the generalized Gini index; nu = 2 is the plain Gini."""

    nu: float

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu <= 1:
            raise ParameterError(f"Gini order must be > 1, got {self.nu!r}")

    @classmethod
    def coerce(cls, value: "GiniOrder | float") -> "GiniOrder":
        if isinstance(value, cls):
            return value
        return cls(float(value))


@dataclasses.dataclass(frozen=True)
class ProbVector:
    """Probabilities of a multinomial population.

    Construction never renormalizes: the values must already sum to one within
    ``PROBABILITY_TOLERANCE``. Use ``ProbVector.from_weights`` to normalize
    arbitrary non-negative weights explicitly.
    """

    p: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.p)
        object.__setattr__(self, "p", values)
        if len(values) == 0:
            raise ParameterError("A probability vector needs at least one cell")
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ParameterError("Probabilities must be finite and non-negative")
        total = math.fsum(values)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ParameterError(
                f"Probabilities must sum to 1 within {PROBABILITY_TOLERANCE}, "
                f"got {total!r}"
            )

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "ProbVector":
        w = np.asarray(weights, dtype=float)
        if w.size == 0 or np.any(~np.isfinite(w)) or np.any(w < 0):
            raise ParameterError("Weights must be finite and non-negative")
        total = w.sum()
        if total <= 0:
            raise ParameterError("Weights must not all be zero")
        return cls(tuple(w / total))

    @classmethod
    def uniform(cls, k: int) -> "ProbVector":
        return cls.from_weights(np.ones(k))

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.p, dtype=float)


@dataclasses.dataclass(frozen=True)
class Sample:
    """An ordered batch of observations together with where it came from."""

    values: tuple[float, ...]
    name: str = "sample"
    source: str = SampleSource.FILE.value

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) == 0:
            raise EmptySampleError(f"Sample {self.name!r} has no observations")
        if any(not math.isfinite(v) for v in values):
            raise SampleParseError(f"Sample {self.name!r} has non-finite values")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def has_ties(self) -> bool:
        return len(set(self.values)) < self.n


class QuadratureSettings(pydantic.BaseModel):
    abs_tol: float = pydantic.Field(1e-10, gt=0)
    rel_tol: float = pydantic.Field(1e-10, gt=0)
    max_subdivisions: int = pydantic.Field(200, ge=10)
    tail_cutoff_survival: float = pydantic.Field(1e-12, gt=0, lt=1)
    normalization_tol: float = pydantic.Field(1e-6, gt=0)

    class Config:
        allow_mutation = False


class FitSettings(pydantic.BaseModel):
    """Bracket and tolerances of the one dimensional likelihood search."""

    bracket_lower: float = pydantic.Field(1e-6, gt=0)
    bracket_upper: float = pydantic.Field(10.0, gt=0)
    xtol: float = pydantic.Field(1e-9, gt=0)
    max_iterations: int = pydantic.Field(500, ge=10)
    boundary_margin: float = pydantic.Field(1e-4, ge=0)
    ks_method: KSMethod = KSMethod.AUTO

    class Config:
        allow_mutation = False

    @pydantic.root_validator(skip_on_failure=True)
    def _ordered_bracket(cls, values):
        if values["bracket_lower"] >= values["bracket_upper"]:
            raise ValueError("bracket_lower must be below bracket_upper")
        return values


class LorenzPoint(pydantic.BaseModel):
    u: float = pydantic.Field(..., ge=0, le=1)
    L: float = pydantic.Field(..., ge=0, le=1)

    @pydantic.root_validator(skip_on_failure=True)
    def _below_diagonal(cls, values):
        if values["L"] > values["u"]:
            raise ValueError("Lorenz curve must lie below the equality line")
        return values


class EmpiricalIndices(pydantic.BaseModel):
    nu: float
    lorenz: List[LorenzPoint]
    gini: float
    generalized_gini: float
    gmd: float


class ConstraintDiagnostics(pydantic.BaseModel):
    """Values taken by the constraints of the entropy maximization problem."""

    mean: float
    eta: float = pydantic.Field(..., description="integral of the survival to nu")
    generalized_gini: float
    phi: float = pydantic.Field(..., description="integral of the squared survival")
    gmd: float


class FitReport(pydantic.BaseModel):
    family: str
    mle: Optional[float] = None
    loglik: Optional[float] = None
    ks: Optional[float] = pydantic.Field(None, ge=0, le=1)
    pvalue: Optional[float] = pydantic.Field(None, ge=0, le=1)
    aic: Optional[float] = None
    bic: Optional[float] = None
    n: int = pydantic.Field(..., ge=1)
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


class ComparisonReport(pydantic.BaseModel):
    dataset: str
    nu: float
    n: int
    reports: List[FitReport]
