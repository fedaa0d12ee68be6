from __future__ import annotations

from fractions import Fraction

import gmpy2
import mpmath
import pytest

ACCEPTANCE_LINES: list = []
MPFR_TYPE = type(gmpy2.mpfr(0))


def as_fraction(value) -> Fraction:
    """Exact rational value of an mpfr, mpf, int, Fraction or decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, MPFR_TYPE):
        return Fraction(*value.as_integer_ratio())
    if hasattr(value, "_mpf_"):
        if not isinstance(value, mpmath.mpf):
            # lazily evaluated constants such as mpmath.euler
            with mpmath.workprec(1000):
                value = +value
        sign, mantissa, exponent, _ = value._mpf_
        magnitude = Fraction(int(mantissa)) * Fraction(2) ** int(exponent)
        return -magnitude if sign else magnitude
    return Fraction(*value.as_integer_ratio())


def encloses(interval, exact, rel_tol=Fraction(0)) -> bool:
    """True when ``exact`` lies in [lo, hi] up to a relative slack for oracle error."""
    x = as_fraction(exact)
    slack = abs(x) * Fraction(rel_tol)
    return as_fraction(interval.lo) - slack <= x <= as_fraction(interval.hi) + slack


@pytest.fixture
def oracle():
    with mpmath.workdps(120):
        yield mpmath


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
