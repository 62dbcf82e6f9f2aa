"""
Shared fixtures and the --runslow switch for full-scale reproduction checks.
"""
import numpy as np
import pytest

from src.datasets import Dataset, make_rng
from src.kernels import KernelParams, KernelSpec
from src.utils.kernel_models import KernelFamily


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow benchmark-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: benchmark-scale test, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def se_spec():
    return KernelSpec(KernelFamily.SQUARED_EXPONENTIAL)


@pytest.fixture
def matern_spec():
    return KernelSpec(KernelFamily.MATERN32)


@pytest.fixture(params=[KernelFamily.SQUARED_EXPONENTIAL, KernelFamily.MATERN32], ids=["se", "matern32"])
def any_spec(request):
    return KernelSpec(request.param)


@pytest.fixture
def unit_params():
    return KernelParams.from_natural(1.0, 1.0, 0.1)


def make_planted_outliers(seed: int) -> Dataset:
    """90 points on y = 0 with noise 0.01 plus 10 gross outliers at y = 100."""
    rng = make_rng(seed)
    x = rng.uniform(-3.0, 3.0, size=100)
    y = rng.normal(0.0, 0.01, size=100)
    is_outlier = np.zeros(100, dtype=bool)
    is_outlier[rng.choice(100, size=10, replace=False)] = True
    y[is_outlier] = 100.0
    return Dataset(x=x, y=y, is_outlier=is_outlier, f_true=np.zeros(100))


@pytest.fixture
def planted_outliers():
    return make_planted_outliers(0)
