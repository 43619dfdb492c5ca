from pathlib import Path

import numpy as np
import pytest

from mutualcons import load_instance

DATA = Path(__file__).parent / "data"

# filled by test_acceptance; echoed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def example1():
    return load_instance(DATA / "example1.json")


@pytest.fixture
def example2():
    return load_instance(DATA / "example2.json")


def random_weights(rng, n):
    w = rng.random(n)
    return w / w.sum()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
