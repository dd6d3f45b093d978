import math

import numpy as np
import pytest

from iwcelab.distributions import GEV, Exponential, Uniform
from iwcelab.entropy import TruncationInterval
from iwcelab.weights import ConstantOne, ExponentialWeight, PolynomialWeight

# acceptance lines collected by tests/test_acceptance.py, echoed at session end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def unit_exp():
    return Exponential(1.0)


@pytest.fixture
def unit_unif():
    return Uniform(0.0, 1.0)


@pytest.fixture
def gev_ref():
    return GEV(2.0, 1.0, 0.5)


@pytest.fixture
def const():
    return ConstantOne()


def window(dist, t1, t2, conv="ratio"):
    return TruncationInterval.make(dist, t1, t2, conv)


WEIGHTS = [ConstantOne(), ExponentialWeight(0.3), PolynomialWeight(1.0, 1.0)]


def rel_err(a, b):
    return abs(a - b) / max(1.0, abs(b))


def finite(x):
    return isinstance(x, float) and math.isfinite(x)


def rng(seed=0):
    return np.random.default_rng(seed)


@pytest.fixture(scope="session")
def verify_seed7():
    """Full in-process suite run at seed 7 (the golden-file seed)."""
    from iwcelab.suite import run_verify
    return run_verify(seed=7)


def checks_named(result, name):
    return [c for c in result["checks"] if c["name"] == name]
