import numpy as np
import pytest

from lowcross.core import SetSystem


def random_system(n, m, seed, density=0.5):
    rng = np.random.default_rng(seed)
    return SetSystem(n, rng.random((m, n)) < density, {"family": "random"})


@pytest.fixture
def small_system():
    return random_system(12, 6, 7)


# acceptance verdicts, printed once at the end of the session
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
