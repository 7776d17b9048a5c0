import numpy as np
import pytest
from hypothesis import strategies as st

from cvinv import _kernels
from cvinv.nodes import random_configuration, validate


@pytest.fixture
def two_simple():
    return validate([0, 1], [1, 1])


@pytest.fixture
def double_at_zero():
    return validate([0], [2])


@pytest.fixture
def mixed():
    # {0 (l=2), 1 (l=1)}
    return validate([0, 1], [2, 1])


@pytest.fixture(params=["numba", "numpy"])
def kernels(request):
    return _kernels.NUMBA_KERNELS if request.param == "numba" else _kernels.NUMPY_KERNELS


def sample_configs(count, seed, n_range=(2, 5), mult_range=(1, 4), delta_min=0.5, max_total=12):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        out.append(random_configuration(
            n, mult_range, delta_min, int(rng.integers(2**31)), max_total=max_total
        ))
    return out


def configurations(max_n=4, max_mult=3, delta_min=0.5):
    """Hypothesis strategy over separated unit-disk configurations."""
    return st.builds(
        lambda n, seed: random_configuration(n, (1, max_mult), delta_min, seed),
        st.integers(2, max_n),
        st.integers(0, 2**32 - 1),
    )


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
