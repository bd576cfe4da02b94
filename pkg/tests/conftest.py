import cmath
import math

import pytest
from hypothesis import strategies as st

from chanstatic import Carrier, Vec3, enumerate_paths

coords = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False).map(lambda v: round(v, 6))
vec3s = st.builds(Vec3, coords, coords, coords)


def direct_sum(env, tx, rx, carrier):
    """Reference gain: sum the enumerated paths one by one with cmath."""
    h = 0j
    for p in enumerate_paths(env, tx, rx):
        h += complex(p.coefficient) * cmath.exp(-2j * math.pi * p.total_length_m / carrier.wavelength_m)
    return h


@pytest.fixture
def carrier():
    return Carrier(2.45e9)


@pytest.fixture
def unit_carrier():
    # wavelength exactly 1 m
    return Carrier(299792458.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
