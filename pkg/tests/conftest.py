import random

import pytest
from hypothesis import settings, strategies as st

from qrr.series import LaurentSeries

settings.register_profile("qrr", max_examples=100, deadline=None)
settings.load_profile("qrr")


@st.composite
def series(draw, max_order=64, min_valuation=-4, max_valuation=8, unit=False):
    """Random integer Laurent series with coefficients bounded by 10^3."""
    v = draw(st.integers(min_valuation, max_valuation))
    n = draw(st.integers(1, max_order))
    coeffs = draw(st.lists(st.integers(-1000, 1000), min_size=n, max_size=n))
    if unit:
        coeffs[0] = draw(st.sampled_from([1, -1]))
    return LaurentSeries(coeffs, v, v + n)


def series_from(text_coeffs, valuation=0, order=None):
    return LaurentSeries(text_coeffs, valuation, order)


@pytest.fixture
def rng():
    return random.Random(20240517)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
