import numpy as np
import pytest

from lipgo import Problem
from lipgo.testbed.pinter import pinter_problem


@pytest.fixture
def quadratic():
    return Problem("square", -1.0, 2.0, f=lambda x: x * x, df=lambda x: 2 * x, known_L=4.0, known_M=2.0)


@pytest.fixture
def pinter38():
    return pinter_problem(3.3611804993)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    """Record one pass/fail line; lines are printed live and repeated in the terminal summary."""
    lines = request.config.stash[ACCEPTANCE_LINES]

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE_LINES]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
