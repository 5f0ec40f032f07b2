import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from mongefoil import Ball, VPolytope

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")

HEPTAGON_EPS = 0.25
HEPTAGON_A = 0.5


def square():
    return VPolytope([[-1, -1], [1, -1], [1, 1], [-1, 1]])


def triangle():
    return VPolytope([[0, 0], [1, 0], [0, 1]])


def hexagon():
    th = np.pi / 3 * np.arange(6)
    return VPolytope(np.column_stack([np.cos(th), np.sin(th)]))


def rectangle():
    return VPolytope([[0, 0], [2, 0], [2, 1], [0, 1]])


def heptagon(eps=HEPTAGON_EPS, a=HEPTAGON_A):
    return VPolytope([[-1, -1], [1, -1], [1, 1], [-1, 1],
                      [1 + eps, a], [-(1 + eps), a], [0, 1 + eps]])


def unit_ball():
    return Ball([0.0, 0.0], 1.0)


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture
def ball():
    return unit_ball()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k].line())
