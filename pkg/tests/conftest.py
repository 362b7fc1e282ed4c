import cmath

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mobiusmodel import make

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

EX8 = [(-0.5, 1), (0.5, 1), (-0.5j, 1), (0.5j, 1)]


@pytest.fixture
def ex8():
    """Zeros +-1/2, +-i/2: the rotation group is <iz>, not <-z>."""
    return make(EX8)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def polar(r, t):
    return cmath.rect(r, t)


def disc_points(r_min=0.0, r_max=0.9):
    return st.builds(
        polar,
        st.floats(r_min, r_max),
        st.floats(0, 2 * cmath.pi, exclude_max=True),
    )


def annulus_zero():
    return disc_points(0.1, 0.7)


@st.composite
def products(draw, max_distinct=4, max_mult=2, origin=False):
    """Random theta with well separated zeros (optionally vanishing at 0)."""
    count = draw(st.integers(1, max_distinct))
    zeros = []
    while len(zeros) < count:
        z = draw(annulus_zero())
        if all(abs(z - w) > 0.05 for w, _ in zeros):
            zeros.append((z, draw(st.integers(1, max_mult))))
    if origin:
        zeros.append((0j, draw(st.integers(1, 3))))
    return make(zeros)


def unit_complex():
    return st.floats(0, 2 * cmath.pi, exclude_max=True).map(lambda t: cmath.exp(1j * t))


def coefficient():
    return st.builds(
        complex,
        st.floats(-2, 2, allow_nan=False),
        st.floats(-2, 2, allow_nan=False),
    )


def random_theta(rng, degree_max=6, origin=False, r_min=0.1, r_max=0.7):
    """numpy-driven theta with distinct, separated zeros."""
    target = int(rng.integers(1, degree_max + 1))
    zeros, degree = [], 0
    while degree < target:
        z = cmath.rect(rng.uniform(r_min, r_max), rng.uniform(0, 2 * np.pi))
        if any(abs(z - w) < 0.05 for w, _ in zeros):
            continue
        m = int(rng.integers(1, min(2, target - degree) + 1))
        zeros.append((z, m))
        degree += m
    if origin:
        zeros.append((0j, int(rng.integers(1, 3))))
    return make(zeros)


# (criterion number, passed, summary line) collected by test_acceptance
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for _, passed, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line, green=passed, red=not passed)
