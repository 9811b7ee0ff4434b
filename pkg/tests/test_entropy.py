import itertools
import math

import mpmath
import numpy as np
import pytest

from mathai_gini import entropy
from mathai_gini.distributions.families import (
    Akash,
    Exponential,
    Ishitha,
    Lindley,
    Pranav,
    RamAwadh,
    Sujatha,
    Uniform,
)
from mathai_gini.exceptions import (
    DivergentIntegralError,
    ParameterError,
    ShannonLimitError,
)
from mathai_gini.maxent import MaxEntLomax
from mathai_gini.schemas import EntropyOrder, ProbVector

ALPHAS = [-4.5, -1.0, 0.0, 0.5, 0.9, 1.1, 1.5, 1.9]


def _random_vectors(rng, count=200, max_k=8):
    for _ in range(count):
        k = int(rng.integers(2, max_k + 1))
        yield ProbVector.from_weights(rng.dirichlet(np.ones(k)))


def _mathai(values, alpha):
    return entropy.mathai_discrete(ProbVector.from_weights(values), alpha)


@pytest.mark.parametrize(
    "p, alpha, expected",
    [
        pytest.param((0.5, 0.5), 0.5, (2**-0.5 - 1) / -0.5, id="half-half"),
        pytest.param((1.0, 0.0, 0.0), 0.5, 0.0, id="degenerate"),
        pytest.param((1.0, 0.0, 0.0), 1.7, 0.0, id="degenerate-high-order"),
        pytest.param((0.25,) * 4, 1.5, (4**0.5 - 1) / 0.5, id="uniform-4"),
    ],
)
def test_mathai_discrete_values(p, alpha, expected):
    assert entropy.mathai_discrete(ProbVector(p), alpha) == pytest.approx(
        expected, abs=1e-12
    )


def test_mathai_discrete_matches_high_precision_sum():
    p = (0.2, 0.3, 0.5)
    with mpmath.workdps(50):
        exact = (sum(mpmath.mpf(v) ** mpmath.mpf("1.5") for v in p) - 1) / mpmath.mpf(
            "-0.5"
        )
    assert entropy.mathai_discrete(ProbVector(p), 0.5) == pytest.approx(
        float(exact), abs=1e-14
    )


@pytest.mark.parametrize(
    "alpha, expected_error",
    [
        pytest.param(1.0, ShannonLimitError, id="shannon"),
        pytest.param(2.0, ParameterError, id="two"),
        pytest.param(3.5, ParameterError, id="above-two"),
        pytest.param(math.nan, ParameterError, id="nan"),
    ],
)
def test_mathai_discrete_rejects_orders(alpha, expected_error):
    with pytest.raises(expected_error):
        entropy.mathai_discrete(ProbVector((0.5, 0.5)), alpha)


def test_shannon_marker_is_rejected_by_generalized_form():
    with pytest.raises(ShannonLimitError):
        entropy.mathai_discrete(ProbVector((0.5, 0.5)), EntropyOrder.shannon_limit())


def test_prob_vector_is_never_renormalized_silently():
    with pytest.raises(ParameterError):
        ProbVector((0.5, 0.6))
    assert ProbVector.from_weights((1, 1, 2)).p == (0.25, 0.25, 0.5)


@pytest.mark.parametrize(
    "p, expected",
    [
        pytest.param((0.5, 0.5), math.log(2), id="two-point"),
        pytest.param((1.0, 0.0), 0.0, id="degenerate"),
    ],
)
def test_shannon_discrete(p, expected):
    assert entropy.shannon_discrete(ProbVector(p)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("h", [1e-4, -1e-4, 1e-6, -1e-6])
def test_mathai_discrete_tends_to_shannon(h):
    p = ProbVector((0.2, 0.3, 0.5))
    error = abs(entropy.mathai_discrete(p, 1 + h) - entropy.shannon_discrete(p))
    assert error < 10 * abs(h)
    if abs(h) <= 1e-6:
        assert error < 1e-5


@pytest.mark.parametrize("alpha", ALPHAS)
def test_non_negativity_expansibility_and_symmetry(alpha, rng):
    for p in _random_vectors(rng, count=50):
        value = entropy.mathai_discrete(p, alpha)
        assert value >= -1e-12
        expanded = ProbVector(p.p + (0.0,))
        assert entropy.mathai_discrete(expanded, alpha) == pytest.approx(value, abs=1e-12)
        shuffled = ProbVector(tuple(rng.permutation(p.p)))
        assert entropy.mathai_discrete(shuffled, alpha) == pytest.approx(value, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_uniform_is_maximal_and_increasing_in_k(alpha, rng):
    for p in _random_vectors(rng, count=50):
        uniform = entropy.mathai_discrete(ProbVector.uniform(p.k), alpha)
        assert entropy.mathai_discrete(p, alpha) <= uniform + 1e-10
    values = [entropy.mathai_discrete(ProbVector.uniform(k), alpha) for k in range(1, 10)]
    assert values[0] == pytest.approx(0.0, abs=1e-15)
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("alpha", ALPHAS)
def test_branching_recursion(alpha, rng):
    for _ in range(200):
        k = int(rng.integers(3, 9))
        p = rng.dirichlet(np.ones(k))
        merged = p[0] + p[1]
        left = _mathai(p, alpha)
        right = _mathai(np.concatenate([[merged], p[2:]]), alpha) + merged ** (
            2 - alpha
        ) * _mathai(p[:2] / merged, alpha)
        assert left == pytest.approx(right, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_non_additivity_for_independent_populations(alpha, rng):
    for _ in range(200):
        p = rng.dirichlet(np.ones(int(rng.integers(2, 5))))
        q = rng.dirichlet(np.ones(int(rng.integers(2, 5))))
        joint = _mathai(np.outer(p, q).ravel(), alpha)
        mp, mq = _mathai(p, alpha), _mathai(q, alpha)
        assert joint == pytest.approx(mp + mq + (alpha - 1) * mp * mq, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_decomposability_over_a_joint_table(alpha, rng):
    for _ in range(200):
        rows, columns = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        table = rng.dirichlet(np.ones(rows * columns)).reshape(rows, columns)
        marginal = table.sum(axis=0)
        conditional = sum(
            marginal[j] ** (2 - alpha) * _mathai(table[:, j] / marginal[j], alpha)
            for j in range(columns)
        )
        assert _mathai(table.ravel(), alpha) == pytest.approx(
            _mathai(marginal, alpha) + conditional, abs=1e-10
        )


@pytest.mark.parametrize("alpha", ALPHAS)
def test_two_point_functional_equation(alpha, rng):
    def f(x):
        return _mathai((x, 1 - x), alpha)

    for x, y, _ in rng.dirichlet(np.ones(3), size=200):
        left = f(x) + (1 - x) ** (2 - alpha) * f(y / (1 - x))
        right = f(y) + (1 - y) ** (2 - alpha) * f(x / (1 - y))
        assert left == pytest.approx(right, abs=1e-10)
    assert f(0.5) == pytest.approx((2 ** (alpha - 1) - 1) / (alpha - 1), abs=1e-12)


def test_mathai_continuous_of_uniform_is_zero():
    for alpha in (0.5, 1.5, -2.0):
        assert entropy.mathai_continuous(Uniform(0, 1), alpha) == pytest.approx(
            0.0, abs=1e-9
        )


def test_mathai_continuous_of_exponential():
    assert entropy.mathai_continuous(Exponential(1.0), 0.5) == pytest.approx(
        2 / 3, abs=1e-8
    )


@pytest.mark.parametrize("alpha", [0.5, 1.5, 1.9])
@pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
def test_mathai_continuous_of_exponential_closed_form(theta, alpha):
    expected = (theta ** (1 - alpha) / (2 - alpha) - 1) / (alpha - 1)
    assert entropy.mathai_continuous(Exponential(theta), alpha) == pytest.approx(
        expected, rel=1e-6
    )


@pytest.mark.parametrize("theta", [0.1, 0.8, 1.3, 6.0])
@pytest.mark.parametrize(
    "family",
    [Exponential, Lindley, Akash, Pranav, Ishitha, RamAwadh, Sujatha],
    ids=lambda f: f.family,
)
def test_mathai_continuous_is_finite_for_light_tails(family, theta):
    value = entropy.mathai_continuous(family(theta), 1.5)
    assert math.isfinite(value)


def test_mathai_continuous_of_lomax_power_integral():
    model = MaxEntLomax.from_beta(3.0, 3.0)
    beta = model.beta
    expected = (beta**1.5 / (1.5 * (beta + 1) - 1) - 1) / -0.5
    assert entropy.mathai_continuous(model, 0.5) == pytest.approx(expected, abs=1e-8)


def test_mathai_continuous_heavy_tail_diverges():
    # f^0.5 decays like x^-0.7 for a Lomax shape of 0.4
    model = MaxEntLomax.from_beta(0.4, 3.0)
    with pytest.raises(DivergentIntegralError):
        entropy.mathai_continuous(model, 1.5)


@pytest.mark.parametrize("theta", [0.5, 2.0])
def test_shannon_continuous_of_exponential(theta):
    assert entropy.shannon_continuous(Exponential(theta)) == pytest.approx(
        1 - math.log(theta), abs=1e-8
    )


def test_mathai_continuous_tends_to_shannon():
    model = Exponential(2.0)
    shannon = entropy.shannon_continuous(model)
    errors = [
        abs(entropy.mathai_continuous(model, 1 + h) - shannon) for h in (1e-2, 1e-4)
    ]
    assert errors[1] < 1e-3
    assert errors[1] < errors[0]


@pytest.mark.parametrize(
    "source, alpha, expected",
    [
        pytest.param(ProbVector((0.5, 0.5)), 1, math.log(2), id="discrete-shannon"),
        pytest.param(
            ProbVector((0.5, 0.5)), 0.5, 2 - math.sqrt(2), id="discrete-mathai"
        ),
        pytest.param(Exponential(1.0), 1.0, 1.0, id="continuous-shannon"),
    ],
)
def test_entropy_dispatch(source, alpha, expected):
    assert entropy.entropy(source, alpha) == pytest.approx(expected, abs=1e-8)


def test_orders_outside_tested_range_are_still_finite():
    p = ProbVector((0.1, 0.2, 0.7))
    for alpha in itertools.chain(np.linspace(-5, 0.99, 7), np.linspace(1.01, 1.99, 7)):
        assert math.isfinite(entropy.mathai_discrete(p, alpha))
