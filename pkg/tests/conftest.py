import shutil

import numpy as np
import pytest

from troforge.grids import (
    build_hermitian_grid,
    build_rank_one_grid,
    build_rectangular_grid,
    build_spin_grid,
    build_symplectic_grid,
)
from troforge.matrix import BlockElement, BlockShape, ToleranceConfig


def pytest_addoption(parser):
    # https://pytest.readthedocs.io/en/latest/example/simple.html#control-skipping-of-tests-according-to-command-line-option
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test as slow to run")

    try:
        import rich  # noqa

        import troforge.log

    except ImportError:
        pass
    else:
        # Bug while using rich + pytest: stderr / stdout is too short
        # Inspired from: https://github.com/willmcgugan/rich/issues/1425
        troforge.log.logger.removeHandler(troforge.log.handler)

        handler = troforge.log.create_handler(width=shutil.get_terminal_size().columns)
        troforge.log.logger.addHandler(handler)


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def tol():
    return ToleranceConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_element(rng):
    """Factory of elements with complex Gaussian entries."""

    def create(shape):
        parts = [
            rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
            for dims in shape
        ]
        return BlockElement(shape, parts)

    return create


@pytest.fixture
def shape_m2_c():
    return BlockShape(((2, 2), (1, 1)))


@pytest.fixture(autouse=True)
def unset_seed(monkeypatch):
    monkeypatch.delenv("TROFORGE_SEED", raising=False)


FACTOR_GRIDS = {
    "IV(4)": lambda: build_spin_grid(3),
    "IV(5)": lambda: build_spin_grid(4),
    "III(3)": lambda: build_hermitian_grid(3),
    "II(5)": lambda: build_symplectic_grid(5),
    "I(2, 3)": lambda: build_rectangular_grid(2, 3),
    "I(1, 3)": lambda: build_rank_one_grid(3),
}


@pytest.fixture(params=list(FACTOR_GRIDS))
def factor_grid(request):
    """Grid of a Cartan factor in its standard realization."""
    return FACTOR_GRIDS[request.param]()
