import random

import pytest

from weylham import FreePoly, WeylElement

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def Q():
    return FreePoly.Q()


@pytest.fixture
def P():
    return FreePoly.P()


@pytest.fixture
def wQ():
    return WeylElement.Q()


@pytest.fixture
def wP():
    return WeylElement.P()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
