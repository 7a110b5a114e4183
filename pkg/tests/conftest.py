from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quadwalk.laurent import LaurentPolynomial
from quadwalk.series import TruncatedLaurentSeries, UnivariateSeries

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def laurent_polys(draw, var="x", max_len=4, nonzero=False):
    lo = draw(st.integers(-3, 3))
    coeffs = draw(st.lists(small_rationals, min_size=1 if nonzero else 0, max_size=max_len))
    p = LaurentPolynomial(coeffs, lo, var)
    if nonzero and p.is_zero():
        p = LaurentPolynomial([1], lo, var)
    return p


@st.composite
def laurent_series(draw, valuation=None, length=None, var="x"):
    val = draw(st.integers(-2, 2)) if valuation is None else valuation
    n = draw(st.integers(1, 6)) if length is None else length
    coeffs = draw(st.lists(laurent_polys(var), min_size=n, max_size=n))
    return TruncatedLaurentSeries(coeffs, val, val + n - 1, var)


@st.composite
def invertible_series(draw, var="x"):
    """Truncated series whose leading coefficient is a nonzero monomial."""
    val = draw(st.integers(-2, 2))
    n = draw(st.integers(1, 6))
    lead = LaurentPolynomial.monomial(draw(st.integers(-2, 2)),
                                      draw(small_rationals.filter(bool)), var)
    rest = draw(st.lists(laurent_polys(var), min_size=n - 1, max_size=n - 1))
    return TruncatedLaurentSeries([lead] + rest, val, val + n - 1, var)


@st.composite
def unit_series(draw, max_order=8):
    """Scalar series with constant term 1."""
    n = draw(st.integers(0, max_order))
    rest = draw(st.lists(small_rationals, min_size=n, max_size=n))
    return UnivariateSeries([Fraction(1)] + rest, 0, n)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
