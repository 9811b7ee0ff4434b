import json
import logging
import math
from unittest import mock

import numpy as np
import pytest
from scipy import optimize, stats

from mathai_gini import data, fitting
from mathai_gini.distributions.families import Akash, Uniform
from mathai_gini.exceptions import (
    DataError,
    FitError,
    NegativeValueError,
    ParameterError,
    UnknownFamilyError,
    ZeroMeanError,
)
from mathai_gini.schemas import FitMethod, FitSettings, KSMethod, Sample

# family, MLE, MLE tolerance, KS, KS tolerance, AIC, AIC tolerance
LOSS_RATIO_TABLE = [
    ("maxentlomax", 0.9697608, 1e-5, 0.16667, 5e-4, 172.8832, 0.01),
    ("exponential", 0.009333437, 1e-8, 0.68343, 5e-4, 274.3593, 0.05),
    ("lindley", 0.01849737, 1e-6, 0.8025, 1e-3, 389.2868, 0.05),
    ("akash", 0.027993, 1e-5, 0.84776, 1e-3, 523.8548, 0.05),
    ("pranav", 0.0390226, 1e-5, 0.86204, 1e-3, 695.1357, 0.05),
    ("ishitha", 0.02963961, 1e-5, 0.84373, 1e-3, 561.0583, 0.05),
    ("ramawadh", 0.05786601, 1e-5, 0.8726, 1e-3, 968.356, 0.05),
    ("sujatha", 0.02786496, 1e-5, 0.84661, 1e-3, 517.0664, 0.05),
]


@pytest.fixture(scope="module")
def comparison():
    return fitting.compare_all(data.builtin_dataset(), nu=3.0)


@pytest.mark.parametrize(
    "family, mle, mle_tol, ks, ks_tol, aic, aic_tol",
    [pytest.param(*row, id=row[0]) for row in LOSS_RATIO_TABLE],
)
def test_loss_ratio_comparison_rows(
    comparison, family, mle, mle_tol, ks, ks_tol, aic, aic_tol
):
    report = {r.family: r for r in comparison}[family]
    assert not report.failed
    assert report.n == 24
    assert report.mle == pytest.approx(mle, abs=mle_tol)
    assert report.ks == pytest.approx(ks, abs=ks_tol)
    assert report.aic == pytest.approx(aic, abs=aic_tol)
    assert report.bic - report.aic == pytest.approx(math.log(24) - 2, abs=1e-10)
    assert report.aic == pytest.approx(2 - 2 * report.loglik, abs=1e-10)


def test_loss_ratio_pvalues(comparison):
    reports = {r.family: r for r in comparison}
    assert reports["maxentlomax"].pvalue == pytest.approx(0.5176, abs=0.005)
    exponential = reports["exponential"].pvalue
    assert 3.666e-11 < exponential < 3.666e-9


def test_maxent_lomax_wins_on_every_criterion(comparison):
    best, *others = comparison
    assert best.family == "maxentlomax"
    assert [r.family for r in comparison][1] == "exponential"
    for report in others:
        assert best.aic < report.aic
        assert best.bic < report.bic
        assert best.ks < report.ks


def test_ranking_is_by_aic(comparison):
    aics = [r.aic for r in comparison]
    assert aics == sorted(aics)


def test_comparison_is_deterministic(comparison, builtin_sample):
    assert fitting.compare_all(builtin_sample, nu=3.0) == comparison


@pytest.mark.parametrize(
    "family",
    ["exponential", "lindley", "maxentlomax"],
)
def test_closed_form_matches_numerical_search(family, builtin_sample):
    nu = 3.0 if family == "maxentlomax" else None
    closed = fitting.estimate(family, builtin_sample, nu)
    numerical = fitting.estimate(family, builtin_sample, nu, method=FitMethod.NUMERICAL)
    assert numerical.params[0] == pytest.approx(closed.params[0], abs=1e-7)


@pytest.mark.parametrize("family", ["akash", "pranav", "ishitha", "ramawadh", "sujatha"])
def test_numerical_estimate_is_stationary(family, builtin_sample):
    model = fitting.estimate(family, builtin_sample)
    theta = model.params[0]
    h = 1e-7 * theta
    cls = type(model)
    slope = (cls(theta + h).loglik(builtin_sample) - cls(theta - h).loglik(builtin_sample)) / (
        2 * h
    )
    assert abs(slope) * theta / builtin_sample.n < 1e-4


def test_estimate_validates_gini_order(builtin_sample):
    with pytest.raises(ParameterError):
        fitting.estimate("maxentlomax", builtin_sample)
    with pytest.raises(ParameterError):
        fitting.estimate("akash", builtin_sample, 3.0)
    with pytest.raises(UnknownFamilyError):
        fitting.estimate("weibull", builtin_sample)


@pytest.mark.parametrize(
    "values, expected_error",
    [
        pytest.param((4.0,), DataError, id="single"),
        pytest.param((4.0, -1.0), NegativeValueError, id="negative"),
        pytest.param((0.0, 0.0, 0.0), ZeroMeanError, id="zeros"),
    ],
)
def test_unusable_samples_are_rejected(values, expected_error):
    with pytest.raises(expected_error):
        fitting.compare_all(Sample(values))


def test_two_observations_are_enough():
    reports = fitting.compare_all(Sample((1.0, 3.0)))
    assert sorted(r.family for r in reports) == sorted(
        row[0] for row in LOSS_RATIO_TABLE
    )
    assert all(r.n == 2 for r in reports)


def test_simulated_exponential_sample(rng):
    sample = Sample(tuple(rng.exponential(1.0, size=100)))
    report = fitting.fit_mle("exponential", sample)
    assert report.mle == pytest.approx(1.0, abs=0.3)
    assert report.pvalue == pytest.approx(float(stats.kstwo.sf(report.ks, 100)))


class TestKolmogorovSmirnov:
    def test_uniform_spacing_distance(self):
        n = 20
        sample = Sample(tuple((i - 0.5) / n for i in range(1, n + 1)))
        assert fitting.ks_statistic(Uniform(0.0, 1.0), sample) == pytest.approx(
            0.5 / n, abs=1e-15
        )

    def test_ties_make_a_single_jump(self):
        sample = Sample((0.5, 0.5, 0.5, 0.5))
        assert fitting.ks_statistic(Uniform(0.0, 1.0), sample) == pytest.approx(0.5)

    @pytest.mark.parametrize("method", list(KSMethod))
    def test_pvalue_edges(self, method):
        assert fitting.ks_pvalue(0.0, 24, method) == 1.0
        assert fitting.ks_pvalue(1.0, 24, method) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("method", [KSMethod.EXACT, KSMethod.ASYMPTOTIC])
    def test_pvalue_decreases_with_distance(self, method):
        values = [fitting.ks_pvalue(d, 24, method) for d in np.linspace(0.01, 0.99, 30)]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_auto_pvalue_selection(self):
        d = 0.2
        exact = float(stats.kstwo.sf(d, 24))
        asymptotic = float(stats.kstwobign.sf(math.sqrt(24) * d))
        assert fitting.ks_pvalue(d, 24, KSMethod.AUTO) == pytest.approx(exact)
        assert fitting.ks_pvalue(d, 24, KSMethod.AUTO, ties=True) == pytest.approx(asymptotic)
        assert fitting.ks_pvalue(d, 500, KSMethod.AUTO) == pytest.approx(
            float(stats.kstwobign.sf(math.sqrt(500) * d))
        )

    @pytest.mark.parametrize("d, n", [(-0.1, 10), (1.2, 10), (0.3, 0)])
    def test_pvalue_rejects_bad_input(self, d, n):
        with pytest.raises(ParameterError):
            fitting.ks_pvalue(d, n)


@pytest.mark.parametrize(
    "loglik, k, n, expected",
    [
        pytest.param(-10.0, 1, 24, (22.0, math.log(24) + 20.0), id="one-param"),
        pytest.param(0.0, 2, 1, (4.0, 0.0), id="single-observation"),
    ],
)
def test_information_criteria(loglik, k, n, expected):
    assert fitting.information_criteria(loglik, k, n) == pytest.approx(expected)


def test_information_criteria_rejects_empty():
    with pytest.raises(ParameterError):
        fitting.information_criteria(-1.0, 0, 10)


def test_failed_family_is_kept_and_ranked_last(builtin_sample, caplog):
    original = fitting.fit_mle

    def flaky(family, sample, nu=None, **kwargs):
        if family == "pranav":
            raise FitError("no convergence")
        return original(family, sample, nu, **kwargs)

    with mock.patch.object(fitting, "fit_mle", side_effect=flaky):
        reports = fitting.compare_all(builtin_sample)
    assert len(reports) == 8
    assert reports[-1].family == "pranav"
    assert reports[-1].failed
    assert reports[-1].aic is None
    assert "pranav" in caplog.text
    rendered = fitting.render_csv(reports)
    assert rendered.splitlines()[0].endswith(",error")
    assert rendered.splitlines()[-1].endswith("no convergence")
    assert "error pranav: no convergence" in fitting.render_text(reports)


def test_optimizer_failure_carries_trace(builtin_sample):
    failure = optimize.OptimizeResult(
        x=0.5, fun=1.0, success=False, nfev=3, message="maximum iterations"
    )
    with mock.patch.object(fitting.optimize, "minimize_scalar", return_value=failure):
        with pytest.raises(FitError) as excinfo:
            fitting.estimate("akash", builtin_sample)
    attempts = excinfo.value.trace["attempts"]
    assert len(attempts) == 1
    assert attempts[0]["message"] == "maximum iterations"


def test_maximum_on_bracket_edge_expands_once(caplog):
    sample = Sample((1e-4, 2e-4, 3e-4))
    settings = FitSettings(bracket_upper=10.0)
    with caplog.at_level(logging.WARNING, logger="mathai_gini.fitting"):
        model = fitting.estimate("akash", sample, settings=settings)
    assert isinstance(model, Akash)
    assert "expanding" in caplog.text
    assert model.params[0] > 10.0


class TestRendering:
    def test_text_table(self, comparison):
        text = fitting.render_text(comparison)
        header, first, *_ = text.splitlines()
        assert header.split() == list(fitting.REPORT_FIELDS)
        assert first.startswith("maxentlomax")
        assert "error" not in text

    def test_csv_has_full_precision(self, comparison):
        lines = fitting.render_csv(comparison).splitlines()
        assert lines[0] == "family,mle,loglik,ks,pvalue,aic,bic,n"
        assert len(lines) == 9
        cells = lines[1].split(",")
        assert cells[0] == "maxentlomax"
        assert float(cells[5]) == comparison[0].aic

    def test_json_report(self, comparison, builtin_sample):
        report = fitting.comparison_report(builtin_sample, 3.0, comparison)
        payload = json.loads(fitting.render_json(report))
        assert payload["dataset"] == builtin_sample.name
        assert payload["nu"] == 3.0
        assert payload["n"] == 24
        assert [r["family"] for r in payload["reports"]] == [r.family for r in comparison]
        assert "error" not in payload["reports"][0]
