import numpy as np
import pytest
from click.testing import CliRunner

from mathai_gini import data
from mathai_gini.schemas import QuadratureSettings


@pytest.fixture
def cli_runner():
    yield CliRunner()


@pytest.fixture
def builtin_sample():
    yield data.builtin_dataset()


@pytest.fixture
def quadrature_settings():
    yield QuadratureSettings()


@pytest.fixture
def rng():
    yield np.random.default_rng(20230517)


@pytest.fixture(scope="session")
def prefect_harness():
    from prefect.testing.utilities import prefect_test_harness

    with prefect_test_harness():
        yield
