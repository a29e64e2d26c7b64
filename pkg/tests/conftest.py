import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from scissorkit.exact_geom import SimplePolygon
from scissorkit.sampling import random_convex_polygon

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def square(side=1):
    return SimplePolygon([(0, 0), (side, 0), (side, side), (0, side)])


def rect(w, h):
    return SimplePolygon([(0, 0), (w, 0), (w, h), (0, h)])


L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


@pytest.fixture
def unit_square():
    return square()


@pytest.fixture
def l_shape():
    return SimplePolygon(L_SHAPE)


rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 9))
positive_rationals = st.builds(Fraction, st.integers(1, 40), st.integers(1, 9))


@st.composite
def convex_polygons(draw, min_n=3, max_n=9):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_convex_polygon(random.Random(seed), n)


@st.composite
def star_polygons(draw, max_n=9):
    """Simple (often non-convex) polygons, star-shaped around the origin."""
    n = draw(st.integers(3, max_n))
    dirs = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1),
            (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1)]
    picks = sorted(draw(st.lists(st.integers(0, 15), min_size=n, max_size=n, unique=True)))
    radii = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    pts = [(dirs[k][0] * r, dirs[k][1] * r) for k, r in zip(picks, radii)]
    return pts


# --- acceptance reporting -------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
