"""Shared fixtures and hypothesis strategies."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pyramid_fock.pyramid import Pyramid, from_intervals
from pyramid_fock.stepfun import CircleInterval, LineInterval, StepFunction

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# the staircase (5,4,4,3,1,1) and the rational example used throughout
STAIRCASE = "-5:1:-2:2:-1:3:2:2:3:1:5"
RATIONAL = "-11/5:1:-1:2:-7/10:3:2/5:2:2:1:5/2"


@pytest.fixture
def rational_pyramid() -> Pyramid:
    return Pyramid.from_text(RATIONAL)


@pytest.fixture
def unit() -> Pyramid:
    return Pyramid.from_text("0:1:1")


def grid_points(N: int, lo: int = -3, hi: int = 3):
    return st.integers(lo * N, hi * N).map(lambda k: Fraction(k, N))


@st.composite
def line_intervals(draw, N=None, lo=-3, hi=3):
    N = N or draw(st.integers(1, 4))
    a, b = sorted(draw(st.lists(st.integers(lo * N, hi * N), min_size=2, max_size=2, unique=True)))
    return LineInterval(Fraction(a, N), Fraction(b, N))


@st.composite
def step_functions(draw, N=None, max_terms=3):
    N = N or draw(st.integers(1, 4))
    terms = draw(st.lists(st.tuples(line_intervals(N=N), st.integers(-2, 2)), max_size=max_terms))
    return StepFunction.from_intervals(terms)


@st.composite
def pyramids(draw, N=None, max_height=3):
    """Strictly nested level sets ``I_1 > I_2 > ...`` with distinct endpoints, all containing 0."""
    N = N or draw(st.integers(1, 4))
    h = draw(st.integers(0, min(max_height, 3 * N)))
    lefts = sorted(draw(st.lists(st.integers(-3 * N, 0), min_size=h, max_size=h, unique=True)))
    rights = sorted(draw(st.lists(st.integers(1, 3 * N), min_size=h, max_size=h, unique=True)), reverse=True)
    return from_intervals([LineInterval(Fraction(a, N), Fraction(b, N)) for a, b in zip(lefts, rights)])


@st.composite
def circle_intervals(draw, N=None, strict=True):
    N = N or draw(st.integers(2, 4))
    start = draw(st.integers(0, N - 1))
    length = draw(st.integers(1, N - 1 if strict else N))
    return CircleInterval(Fraction(start, N), Fraction(length, N))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
