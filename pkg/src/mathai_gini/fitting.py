"""Maximum likelihood fits, goodness of fit and the loss-ratio comparison table.

Exponential, Lindley and the maximum entropy Lomax law have closed form
estimators; the other families maximize the log-likelihood with scipy's
bounded Brent search (golden section with parabolic steps) on a bracket of
theta. Every fit is reported with its Kolmogorov-Smirnov distance, p-value,
AIC and BIC.

KS p-values follow two conventions: the exact finite-n Kolmogorov law
(``scipy.stats.kstwo``) and its asymptotic limit (``scipy.stats.kstwobign``).
Reports use the exact law for tie-free samples of at most 100 observations
and the asymptotic one otherwise, the fallback of common statistical
software. No correction is applied for estimated parameters.
"""

import csv
import io
import logging
import math
from typing import Iterable, Sequence

import numpy as np
from scipy import optimize, stats

from .distributions import families
from .distributions.base import UnivariateModel
from .exceptions import (
    DataError,
    FitError,
    MathaiGiniError,
    NegativeValueError,
    ParameterError,
    ZeroMeanError,
)
from .maxent import MaxEntLomax, mle_maxent_lomax
from .schemas import (
    ComparisonReport,
    FitMethod,
    FitReport,
    FitSettings,
    GiniOrder,
    KSMethod,
    Sample,
)

logger = logging.getLogger(__name__)

DEFAULT_FIT_SETTINGS = FitSettings()
EXACT_KS_MAX_N = 100
REPORT_FIELDS = ("family", "mle", "loglik", "ks", "pvalue", "aic", "bic", "n")
# factor applied to the violated bracket edge when a maximum sits on it
_BRACKET_EXPANSION = 100.0


def check_sample(sample: Sample) -> None:
    if sample.n < 2:
        raise DataError(f"Sample {sample.name!r} needs at least 2 observations to fit")
    values = sample.array
    if np.any(values < 0):
        raise NegativeValueError(
            f"Sample {sample.name!r} has negative observations, every family "
            f"lives on x >= 0"
        )
    if not values.sum() > 0:
        raise ZeroMeanError(f"Sample {sample.name!r} is identically zero")


def _closed_form(family: str, sample: Sample, nu: float | None) -> UnivariateModel:
    mean = float(np.mean(sample.array))
    if family == families.Exponential.family:
        return families.Exponential(1.0 / mean)
    if family == families.Lindley.family:
        theta = (-(mean - 1) + math.sqrt((mean - 1) ** 2 + 8 * mean)) / (2 * mean)
        return families.Lindley(theta)
    return mle_maxent_lomax(sample, nu)


def _to_model(family: str, value: float, nu: float | None) -> UnivariateModel:
    if family == MaxEntLomax.family:
        return MaxEntLomax.from_beta(value, nu)
    return families.build_model(family, value)


def _objective(family: str, sample: Sample, nu: float | None):
    """Negative log-likelihood in the optimizer's coordinate.

    The coordinate is theta, except for the maximum entropy Lomax law where it
    is the Lomax shape beta.
    """

    def negative_loglik(value: float) -> float:
        try:
            return -_to_model(family, value, nu).loglik(sample)
        except MathaiGiniError:
            return math.inf

    return negative_loglik


def _maximize(
    family: str, sample: Sample, nu: float | None, settings: FitSettings
) -> UnivariateModel:
    objective = _objective(family, sample, nu)
    bracket = (settings.bracket_lower, settings.bracket_upper)
    trace: list[dict] = []
    for attempt in range(2):
        result = optimize.minimize_scalar(
            objective,
            bounds=bracket,
            method="bounded",
            options={"xatol": settings.xtol, "maxiter": settings.max_iterations},
        )
        trace.append(
            {
                "bracket": bracket,
                "x": float(result.x),
                "fun": float(result.fun),
                "nfev": int(result.nfev),
                "success": bool(result.success),
                "message": str(result.message),
            }
        )
        if not result.success or not math.isfinite(result.fun):
            raise FitError(
                f"Likelihood search for {family} did not converge: {result.message}",
                trace={"attempts": trace},
            )
        theta_hat = float(result.x)
        near_lower = theta_hat - bracket[0] < settings.boundary_margin
        near_upper = bracket[1] - theta_hat < settings.boundary_margin
        if not (near_lower or near_upper):
            break
        logger.warning(
            f"{family} likelihood maximum {theta_hat!r} lies within "
            f"{settings.boundary_margin} of the bracket {bracket}"
        )
        if attempt == 0:
            bracket = (
                bracket[0] / _BRACKET_EXPANSION if near_lower else bracket[0],
                bracket[1] * _BRACKET_EXPANSION if near_upper else bracket[1],
            )
            logger.warning(f"expanding the {family} bracket to {bracket}")
    logger.debug(f"{family} likelihood search trace: {trace}")
    try:
        return _to_model(family, theta_hat, nu)
    except ParameterError as err:
        raise FitError(
            f"Likelihood maximum of {family} is not a valid parameter: {err}",
            trace={"attempts": trace},
        ) from err


def estimate(
    family: str,
    sample: Sample,
    nu: GiniOrder | float | None = None,
    *,
    method: FitMethod = FitMethod.AUTO,
    settings: FitSettings = DEFAULT_FIT_SETTINGS,
) -> UnivariateModel:
    """Maximum likelihood model of ``family`` for ``sample``."""
    family_cls = families.get_family(family)
    name = family_cls.family
    if family_cls is MaxEntLomax:
        if nu is None:
            raise ParameterError("maxentlomax needs a Gini order nu")
        nu = GiniOrder.coerce(nu).nu
    elif nu is not None:
        raise ParameterError(f"{name} takes no Gini order")
    check_sample(sample)
    closed_form = (families.Exponential.family, families.Lindley.family, MaxEntLomax.family)
    if method == FitMethod.AUTO and name in closed_form:
        model = _closed_form(name, sample, nu)
    else:
        model = _maximize(name, sample, nu, settings)
    logger.info(f"fitted {model.describe()} to {sample.name!r}")
    return model


def ks_statistic(model: UnivariateModel, sample: Sample) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF and ``model``.

    Evaluated at the distinct sorted values with cumulative counts, so tied
    observations produce a single jump of the empirical CDF.
    """
    values, counts = np.unique(sample.array, return_counts=True)
    n = sample.n
    fitted = np.asarray(model.cdf(values), dtype=float)
    upper = np.cumsum(counts) / n
    lower = upper - counts / n
    distance = max(float(np.max(upper - fitted)), float(np.max(fitted - lower)))
    return min(max(distance, 0.0), 1.0)


def ks_pvalue(
    d: float,
    n: int,
    method: KSMethod = KSMethod.ASYMPTOTIC,
    *,
    ties: bool = False,
) -> float:
    """P(D_n > d) under the exact or the asymptotic Kolmogorov distribution.

    ``KSMethod.AUTO`` picks the exact law when ``ties`` is false and
    n <= 100.
    """
    d = float(d)
    if not 0 <= d <= 1:
        raise ParameterError(f"KS distance must lie in [0, 1], got {d!r}")
    if n < 1:
        raise ParameterError(f"Sample size must be positive, got {n!r}")
    if d == 0:
        return 1.0
    if method == KSMethod.AUTO:
        method = KSMethod.EXACT if not ties and n <= EXACT_KS_MAX_N else KSMethod.ASYMPTOTIC
    if method == KSMethod.EXACT:
        value = float(stats.kstwo.sf(d, n))
    else:
        value = float(stats.kstwobign.sf(math.sqrt(n) * d))
    return min(max(value, 0.0), 1.0)


def information_criteria(loglik: float, k: int, n: int) -> tuple[float, float]:
    """AIC = 2k - 2 lnL and BIC = k ln n - 2 lnL."""
    if k < 1 or n < 1:
        raise ParameterError(f"Need k >= 1 and n >= 1, got k={k}, n={n}")
    return 2 * k - 2 * loglik, k * math.log(n) - 2 * loglik


def assess(
    model: UnivariateModel,
    sample: Sample,
    settings: FitSettings = DEFAULT_FIT_SETTINGS,
) -> FitReport:
    """Goodness of fit report for an already fitted ``model``."""
    loglik = model.loglik(sample)
    ks = ks_statistic(model, sample)
    aic, bic = information_criteria(loglik, model.n_params, sample.n)
    return FitReport(
        family=model.family,
        mle=model.params[0],
        loglik=loglik,
        ks=ks,
        pvalue=ks_pvalue(ks, sample.n, settings.ks_method, ties=sample.has_ties),
        aic=aic,
        bic=bic,
        n=sample.n,
    )


def fit_mle(
    family: str,
    sample: Sample,
    nu: GiniOrder | float | None = None,
    *,
    method: FitMethod = FitMethod.AUTO,
    settings: FitSettings = DEFAULT_FIT_SETTINGS,
) -> FitReport:
    model = estimate(family, sample, nu, method=method, settings=settings)
    return assess(model, sample, settings)


def safe_fit(
    family: str,
    sample: Sample,
    nu: GiniOrder | float,
    settings: FitSettings = DEFAULT_FIT_SETTINGS,
) -> FitReport:
    """Like ``fit_mle`` but a failure becomes a report row carrying the error."""
    gini_order = nu if families.get_family(family) is MaxEntLomax else None
    try:
        return fit_mle(family, sample, gini_order, settings=settings)
    except MathaiGiniError as err:
        logger.warning(f"{family} fit on {sample.name!r} failed: {err}")
        return FitReport(family=family, n=sample.n, error=str(err))


def rank_reports(reports: Iterable[FitReport]) -> list[FitReport]:
    """Sort by AIC, failed rows last in registry order."""
    return sorted(
        reports,
        key=lambda r: (r.failed, r.aic if r.aic is not None else math.inf),
    )


def compare_all(
    sample: Sample,
    nu: GiniOrder | float = 3.0,
    settings: FitSettings = DEFAULT_FIT_SETTINGS,
) -> list[FitReport]:
    """Fit every registered family to ``sample`` and rank them by AIC."""
    nu = GiniOrder.coerce(nu).nu
    check_sample(sample)
    reports = [
        safe_fit(family, sample, nu, settings) for family in families.COMPARISON_FAMILIES
    ]
    ranked = rank_reports(reports)
    logger.info(
        f"comparison on {sample.name!r}: "
        + ", ".join(r.family for r in ranked)
    )
    return ranked


def comparison_report(
    sample: Sample, nu: GiniOrder | float, reports: Sequence[FitReport]
) -> ComparisonReport:
    return ComparisonReport(
        dataset=sample.name,
        nu=GiniOrder.coerce(nu).nu,
        n=sample.n,
        reports=list(reports),
    )


def _text_cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.7g}"
    return str(value)


def render_text(reports: Sequence[FitReport]) -> str:
    """Aligned table with 7 significant digits; failed rows show their error."""
    rows = [list(REPORT_FIELDS)]
    errors = []
    for report in reports:
        rows.append([_text_cell(getattr(report, field)) for field in REPORT_FIELDS])
        if report.failed:
            errors.append(f"{report.family}: {report.error}")
    widths = [max(len(row[i]) for row in rows) for i in range(len(REPORT_FIELDS))]
    lines = [
        "  ".join(
            cell.ljust(width) if i == 0 else cell.rjust(width)
            for i, (cell, width) in enumerate(zip(row, widths))
        ).rstrip()
        for row in rows
    ]
    lines.extend(f"error {line}" for line in errors)
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(reports: Sequence[FitReport]) -> str:
    """CSV with full double precision; an error column appears only when needed."""
    fields = list(REPORT_FIELDS)
    if any(report.failed for report in reports):
        fields.append("error")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(fields)
    for report in reports:
        writer.writerow([_csv_cell(getattr(report, field)) for field in fields])
    return buffer.getvalue()


def render_json(report: ComparisonReport | FitReport) -> str:
    return report.json(exclude_none=True, indent=2) + "\n"
