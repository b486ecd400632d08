import numpy as np
import pytest
from hypothesis import strategies as st

from sl2o import algebra as alg

half = st.integers(-4, 4).map(lambda k: k / 2.0)
octonions = st.lists(half, min_size=8, max_size=8).map(np.array)
imaginary = octonions.map(alg.imag)


@pytest.fixture
def rng():
    return np.random.default_rng(20140617)


@pytest.fixture
def e():
    return np.eye(8)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
