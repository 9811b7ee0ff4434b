"""Prefect orchestration of the family comparison."""
from prefect import (
    flow,
    get_run_logger,
    task,
)
from prefect.task_runners import ConcurrentTaskRunner

# don't perform relative imports because prefect loads flows by module path
from mathai_gini import fitting
from mathai_gini.distributions.families import COMPARISON_FAMILIES
from mathai_gini.schemas import FitReport, FitSettings, GiniOrder, Sample


@task
def fit_family_task(
    family: str, sample: Sample, nu: float, settings: FitSettings
) -> FitReport:
    logger = get_run_logger()
    report = fitting.safe_fit(family, sample, nu, settings)
    if report.failed:
        logger.warning(f"{family} failed: {report.error}")
    else:
        logger.info(f"{family}: mle={report.mle!r} aic={report.aic!r}")
    return report


@flow(
    name="compare-families",
    task_runner=ConcurrentTaskRunner(),
    validate_parameters=False,
)
def compare_families_flow(
    sample: Sample,
    nu: float = 3.0,
    settings: FitSettings = fitting.DEFAULT_FIT_SETTINGS,
) -> list[FitReport]:
    """Fit every family concurrently and rank the reports like ``compare_all``.

    Each family is an independent task; the ranking by AIC makes the order in
    which tasks finish irrelevant.
    """
    logger = get_run_logger()
    nu = GiniOrder.coerce(nu).nu
    fitting.check_sample(sample)
    logger.info(f"comparing {len(COMPARISON_FAMILIES)} families on {sample.name!r}")
    futures = [
        fit_family_task.submit(family, sample, nu, settings)
        for family in COMPARISON_FAMILIES
    ]
    return fitting.rank_reports(future.result() for future in futures)
