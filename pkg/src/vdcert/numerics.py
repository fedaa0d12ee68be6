"""Directed-rounding interval arithmetic on top of MPFR (through gmpy2).

Every ``DirectedReal`` is a closed interval ``[lo, hi]`` whose endpoints are
MPFR floats of a fixed precision.  Lower endpoints are always produced in
round-toward-minus-infinity mode and upper endpoints in round-toward-plus-
infinity mode, so the exact real result of an operation on any points of the
operands is contained in the result interval.

Besides the interval type the module offers

* ``interval_eval``: evaluate a small expression language with intervals,
* ``lambert_w0``: certified enclosure of the principal Lambert W branch,
* ``bisect_root``: root bracketing with certified signs,
* ``max_on_ray``: certified upper bound of a function on ``[x_lo, inf)``.
"""

from __future__ import annotations

import ast
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence, Union

import gmpy2
from gmpy2 import mpfr, mpz

from .errors import BracketError, DomainViolation, PrecisionExhausted, TailError

DEFAULT_PRECISION = 256
CONFIRM_PRECISION = 512

_EMAX = gmpy2.get_emax_max()
_EMIN = gmpy2.get_emin_min()


@lru_cache(maxsize=None)
def _context(prec: int, mode: int) -> gmpy2.context:
    if prec < 2:
        raise PrecisionExhausted(f"precision {prec} is too small")
    return gmpy2.context(precision=prec, round=mode, emax=_EMAX, emin=_EMIN)


def down(prec: int) -> gmpy2.context:
    return _context(prec, gmpy2.RoundDown)


def up(prec: int) -> gmpy2.context:
    return _context(prec, gmpy2.RoundUp)


def nearest(prec: int) -> gmpy2.context:
    return _context(prec, gmpy2.RoundToNearest)


Number = Union[int, Fraction, float, str, "DirectedReal"]


def _fraction_bounds(value: Fraction, prec: int):
    num, den = mpz(value.numerator), mpz(value.denominator)
    return down(prec).div(num, den), up(prec).div(num, den)


def _is_zero(x) -> bool:
    return x == 0


class DirectedReal:
    """Closed interval with outward-rounded MPFR endpoints."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PRECISION):
        if hi is None:
            hi = lo
        lo = down(prec).plus(lo)
        hi = up(prec).plus(hi)
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise DomainViolation("NaN endpoint")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("DirectedReal is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def _raw(cls, lo, hi, prec: int) -> "DirectedReal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        object.__setattr__(obj, "prec", prec)
        return obj

    @classmethod
    def exact(cls, value, prec: int = DEFAULT_PRECISION) -> "DirectedReal":
        """Smallest representable interval containing ``value``.

        Strings are parsed as exact decimals, floats are taken at face value.
        """
        if isinstance(value, DirectedReal):
            if value.prec == prec:
                return value
            return cls._raw(down(prec).plus(value.lo), up(prec).plus(value.hi), prec)
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            value = mpz(value)
            return cls._raw(down(prec).plus(value), up(prec).plus(value), prec)
        if isinstance(value, Fraction):
            lo, hi = _fraction_bounds(value, prec)
            return cls._raw(lo, hi, prec)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise DomainViolation("non-finite float")
            value = mpfr(value, 64)
            return cls._raw(down(prec).plus(value), up(prec).plus(value), prec)
        if isinstance(value, type(mpfr(0))):
            return cls._raw(down(prec).plus(value), up(prec).plus(value), prec)
        raise TypeError(f"cannot convert {type(value).__name__} to DirectedReal")

    @classmethod
    def hull(cls, values: Iterable["DirectedReal"]) -> "DirectedReal":
        values = list(values)
        prec = max(v.prec for v in values)
        return cls._raw(min(v.lo for v in values), max(v.hi for v in values), prec)

    # inspection -----------------------------------------------------------

    @property
    def mid(self):
        return nearest(self.prec).div_2exp(nearest(self.prec).add(self.lo, self.hi), 1)

    @property
    def width(self):
        return up(self.prec).sub(self.hi, self.lo)

    def contains(self, value) -> bool:
        other = DirectedReal.exact(value, self.prec)
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"DirectedReal([{self.lo:.20g}, {self.hi:.20g}], prec={self.prec})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedReal):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "DirectedReal":
        if isinstance(other, DirectedReal):
            return other
        return DirectedReal.exact(other, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        return DirectedReal._raw(down(prec).add(self.lo, other.lo), up(prec).add(self.hi, other.hi), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        return DirectedReal._raw(down(prec).sub(self.lo, other.hi), up(prec).sub(self.hi, other.lo), prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        # bare unary minus would round to the global 53-bit context
        return DirectedReal._raw(down(self.prec).minus(self.hi), up(self.prec).minus(self.lo), self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DirectedReal._raw(mpfr(0), max(up(self.prec).minus(self.lo), self.hi), self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            return DirectedReal._raw(down(prec).mul(a, c), up(prec).mul(b, d), prec)
        dn, un = down(prec), up(prec)
        pairs = ((a, c), (a, d), (b, c), (b, d))
        lo = min(dn.mul(x, y) for x, y in pairs)
        hi = max(un.mul(x, y) for x, y in pairs)
        return DirectedReal._raw(lo, hi, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.contains_zero():
            raise DomainViolation("division by an interval containing zero")
        prec = max(self.prec, other.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        dn, un = down(prec), up(prec)
        if a >= 0 and c > 0:
            return DirectedReal._raw(dn.div(a, d), un.div(b, c), prec)
        pairs = ((a, c), (a, d), (b, c), (b, d))
        lo = min(dn.div(x, y) for x, y in pairs)
        hi = max(un.div(x, y) for x, y in pairs)
        return DirectedReal._raw(lo, hi, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent):
        if isinstance(exponent, bool):
            exponent = int(exponent)
        if isinstance(exponent, int):
            return self._int_pow(exponent)
        if isinstance(exponent, Fraction) and exponent.denominator == 1:
            return self._int_pow(int(exponent))
        return self._real_pow(self._coerce(exponent))

    def __rpow__(self, base):
        return self._coerce(base) ** self

    def _int_pow(self, n: int) -> "DirectedReal":
        if n == 0:
            return DirectedReal.exact(1, self.prec)
        if n < 0:
            return 1 / self._int_pow(-n)
        dn, un = down(self.prec), up(self.prec)
        a, b = self.lo, self.hi
        if a >= 0:
            return DirectedReal._raw(dn.pow(a, n), un.pow(b, n), self.prec)
        if n % 2:
            return DirectedReal._raw(dn.pow(a, n), un.pow(b, n), self.prec)
        if b <= 0:
            return DirectedReal._raw(dn.pow(b, n), un.pow(a, n), self.prec)
        return DirectedReal._raw(mpfr(0), un.pow(max(un.minus(a), b), n), self.prec)

    def _real_pow(self, exponent: "DirectedReal") -> "DirectedReal":
        prec = max(self.prec, exponent.prec)
        if self.lo < 0 or (self.lo == 0 and exponent.lo <= 0):
            raise DomainViolation("real power needs a positive base")
        dn, un = down(prec), up(prec)
        # x^y is monotone in each argument separately, so for every base
        # endpoint the extreme exponent is fixed by the side of 1 it lies on
        if exponent.lo >= 0:
            low_bases, high_bases = (self.lo,), (self.hi,)
        elif exponent.hi <= 0:
            low_bases, high_bases = (self.hi,), (self.lo,)
        else:
            low_bases = high_bases = (self.lo, self.hi)
        lo = min(dn.pow(x, exponent.lo if x >= 1 else exponent.hi) for x in low_bases)
        hi = max(un.pow(x, exponent.hi if x >= 1 else exponent.lo) for x in high_bases)
        return DirectedReal._raw(lo, hi, prec)

    # elementary functions -------------------------------------------------

    def sqrt(self):
        if self.lo < 0:
            raise DomainViolation("sqrt of an interval with negative part")
        return DirectedReal._raw(down(self.prec).sqrt(self.lo), up(self.prec).sqrt(self.hi), self.prec)

    def log(self):
        if self.lo <= 0:
            raise DomainViolation("log of an interval that is not strictly positive")
        return DirectedReal._raw(down(self.prec).log(self.lo), up(self.prec).log(self.hi), self.prec)

    def exp(self):
        return DirectedReal._raw(down(self.prec).exp(self.lo), up(self.prec).exp(self.hi), self.prec)

    def cosh(self):
        dn, un = down(self.prec), up(self.prec)
        if self.lo >= 0:
            return DirectedReal._raw(dn.cosh(self.lo), un.cosh(self.hi), self.prec)
        if self.hi <= 0:
            return DirectedReal._raw(dn.cosh(self.hi), un.cosh(self.lo), self.prec)
        return DirectedReal._raw(mpfr(1), max(un.cosh(self.lo), un.cosh(self.hi)), self.prec)

    def _turns(self, offset: Fraction, period_multiple: int) -> "DirectedReal":
        """Enclosure of x / (period_multiple * pi) - offset over the interval."""
        period = pi(self.prec) * period_multiple
        return self / period - DirectedReal.exact(offset, self.prec)

    @staticmethod
    def _may_contain_integer(interval: "DirectedReal") -> bool:
        return math.floor(interval.hi) >= math.ceil(interval.lo)

    def _wide(self) -> bool:
        return self.width >= up(self.prec).mul(2, up(self.prec).const_pi())

    def cos(self):
        dn, un = down(self.prec), up(self.prec)
        if self._wide():
            return DirectedReal.exact(-1, self.prec)._hull_with(1)
        lo = max(min(dn.cos(self.lo), dn.cos(self.hi)), mpfr(-1))
        hi = min(max(un.cos(self.lo), un.cos(self.hi)), mpfr(1))
        if self._may_contain_integer(self._turns(Fraction(0), 2)):
            hi = mpfr(1)
        if self._may_contain_integer(self._turns(Fraction(1, 2), 2)):
            lo = mpfr(-1)
        return DirectedReal._raw(lo, hi, self.prec)

    def sin(self):
        dn, un = down(self.prec), up(self.prec)
        if self._wide():
            return DirectedReal.exact(-1, self.prec)._hull_with(1)
        lo = max(min(dn.sin(self.lo), dn.sin(self.hi)), mpfr(-1))
        hi = min(max(un.sin(self.lo), un.sin(self.hi)), mpfr(1))
        if self._may_contain_integer(self._turns(Fraction(1, 4), 2)):
            hi = mpfr(1)
        if self._may_contain_integer(self._turns(Fraction(3, 4), 2)):
            lo = mpfr(-1)
        return DirectedReal._raw(lo, hi, self.prec)

    def tan(self):
        if self._wide() or self._may_contain_integer(self._turns(Fraction(1, 2), 1)):
            raise DomainViolation("tan pole inside interval")
        return DirectedReal._raw(down(self.prec).tan(self.lo), up(self.prec).tan(self.hi), self.prec)

    def cot(self):
        if self._wide() or self._may_contain_integer(self._turns(Fraction(0), 1)):
            raise DomainViolation("cot pole inside interval")
        return DirectedReal._raw(down(self.prec).cot(self.hi), up(self.prec).cot(self.lo), self.prec)

    def sec(self):
        return 1 / self.cos()

    def csc(self):
        return 1 / self.sin()

    def _hull_with(self, other) -> "DirectedReal":
        other = self._coerce(other)
        return DirectedReal._raw(min(self.lo, other.lo), max(self.hi, other.hi), self.prec)

    def max(self, other) -> "DirectedReal":
        other = self._coerce(other)
        return DirectedReal._raw(max(self.lo, other.lo), max(self.hi, other.hi), max(self.prec, other.prec))

    def min(self, other) -> "DirectedReal":
        other = self._coerce(other)
        return DirectedReal._raw(min(self.lo, other.lo), min(self.hi, other.hi), max(self.prec, other.prec))


# free-function spellings --------------------------------------------------


def to_interval(value, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return DirectedReal.exact(value, prec)


def sqrt(x: DirectedReal) -> DirectedReal:
    return x.sqrt()


def log(x: DirectedReal) -> DirectedReal:
    return x.log()


def exp(x: DirectedReal) -> DirectedReal:
    return x.exp()


def sin(x: DirectedReal) -> DirectedReal:
    return x.sin()


def cos(x: DirectedReal) -> DirectedReal:
    return x.cos()


def tan(x: DirectedReal) -> DirectedReal:
    return x.tan()


def cot(x: DirectedReal) -> DirectedReal:
    return x.cot()


def sec(x: DirectedReal) -> DirectedReal:
    return x.sec()


def csc(x: DirectedReal) -> DirectedReal:
    return x.csc()


def cosh(x: DirectedReal) -> DirectedReal:
    return x.cosh()


@lru_cache(maxsize=64)
def pi(prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return DirectedReal._raw(down(prec).const_pi(), up(prec).const_pi(), prec)


@lru_cache(maxsize=64)
def euler_gamma(prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return DirectedReal._raw(down(prec).const_euler(), up(prec).const_euler(), prec)


@lru_cache(maxsize=64)
def e_const(prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return DirectedReal.exact(1, prec).exp()


def check_le(value: DirectedReal, target) -> bool:
    """Certified ``value <= target`` (every point of value below target)."""
    target = DirectedReal.exact(target, value.prec)
    return value.hi <= target.lo


def check_lt(value: DirectedReal, target) -> bool:
    target = DirectedReal.exact(target, value.prec)
    return value.hi < target.lo


def check_ge(value: DirectedReal, target) -> bool:
    target = DirectedReal.exact(target, value.prec)
    return value.lo >= target.hi


def check_gt(value: DirectedReal, target) -> bool:
    target = DirectedReal.exact(target, value.prec)
    return value.lo > target.hi


# Lambert W ---------------------------------------------------------------


def _w_guess(x, ctx):
    if x > 3:
        l1 = ctx.log(x)
        l2 = ctx.log(l1)
        return l1 - l2 + l2 / l1
    lp = ctx.log1p(x)
    return lp * (1 - ctx.log1p(lp) / (2 + lp))


def _w_newton(x, prec: int):
    ctx = nearest(prec + 20)
    with ctx:
        x = mpfr(x)
        w = _w_guess(x, ctx)
        tol = mpfr(2) ** (-(prec + 8))
        for _ in range(200):
            ew = ctx.exp(w)
            step = (w * ew - x) / (ew * (w + 1))
            w = w - step
            if abs(step) <= tol * max(abs(w), mpfr(1) / 1024):
                return w
    raise PrecisionExhausted("Lambert W Newton iteration did not converge")


def _w_lower(x, prec: int):
    """Largest found w with w*e^w <= x, certified."""
    if x == 0:
        return mpfr(0)
    w = down(prec).plus(_w_newton(x, prec))
    un = up(prec)
    step = 1
    while un.mul(w, un.exp(w)) > x:
        for _ in range(step):
            w = down(prec).next_below(w)
        step *= 2
    return w


def _w_upper(x, prec: int):
    if x == 0:
        return mpfr(0)
    w = up(prec).plus(_w_newton(x, prec))
    dn = down(prec)
    step = 1
    while dn.mul(w, dn.exp(w)) < x:
        for _ in range(step):
            w = up(prec).next_above(w)
        step *= 2
    return w


def lambert_w0(x, prec: int | None = None) -> DirectedReal:
    """Certified enclosure of the principal branch W0 on ``x >= 0``.

    Newton's method in round-to-nearest gives an approximation; each
    endpoint is then nudged outward until ``w * exp(w)`` provably brackets
    the argument.  ``w * exp(w)`` is increasing on ``w >= 0``, so this
    yields a rigorous enclosure.
    """
    if not isinstance(x, DirectedReal):
        x = DirectedReal.exact(x, prec or DEFAULT_PRECISION)
    prec = prec or x.prec
    if x.lo < 0:
        raise DomainViolation("lambert_w0 is only provided for non-negative arguments")
    # certify with guard bits, then round outward: width stays within 2 ulp
    guard = prec + 32
    lo = down(prec).plus(_w_lower(x.lo, guard))
    hi = up(prec).plus(_w_upper(x.hi, guard))
    return DirectedReal._raw(lo, hi, prec)


def W(x: DirectedReal) -> DirectedReal:
    return lambert_w0(x, x.prec)


# root bracketing -----------------------------------------------------------


def _certified_sign(value: DirectedReal) -> int:
    if value.lo > 0:
        return 1
    if value.hi < 0:
        return -1
    return 0


def bisect_root(
    func: Callable[[DirectedReal], DirectedReal],
    lo,
    hi,
    prec: int = DEFAULT_PRECISION,
    rel_tol=None,
    max_steps: int = 2000,
) -> DirectedReal:
    """Bracket a root of ``func`` on ``[lo, hi]`` by certified bisection.

    ``func`` receives point intervals and must return enclosures.  The
    returned interval always contains a sign change of the exact function.
    If the sign at a midpoint cannot be certified the current bracket is
    returned early.
    """
    lo = DirectedReal.exact(lo, prec).lo
    hi = DirectedReal.exact(hi, prec).hi
    if rel_tol is None:
        rel_tol = mpfr(2) ** -100
    sign_lo = _certified_sign(func(DirectedReal._raw(lo, lo, prec)))
    sign_hi = _certified_sign(func(DirectedReal._raw(hi, hi, prec)))
    if sign_lo == 0 or sign_hi == 0 or sign_lo == sign_hi:
        raise BracketError(f"no certified sign change on [{float(lo)}, {float(hi)}]")
    ctx = nearest(prec)
    for _ in range(max_steps):
        scale = max(abs(lo), abs(hi))
        if ctx.sub(hi, lo) <= rel_tol * (scale if scale > 0 else 1):
            break
        midpoint = ctx.div_2exp(ctx.add(lo, hi), 1)
        if not lo < midpoint < hi:
            break
        value = func(DirectedReal._raw(midpoint, midpoint, prec))
        if value.lo == 0 and value.hi == 0:
            return DirectedReal._raw(midpoint, midpoint, prec)
        sign_mid = _certified_sign(value)
        if sign_mid == 0:
            # try off-centre splits before settling for the current bracket
            for numerator in (3, 5):
                midpoint = ctx.add(lo, ctx.mul(ctx.sub(hi, lo), mpfr(numerator) / 8))
                if lo < midpoint < hi:
                    sign_mid = _certified_sign(func(DirectedReal._raw(midpoint, midpoint, prec)))
                    if sign_mid != 0:
                        break
            if sign_mid == 0:
                break
        if sign_mid == sign_lo:
            lo = midpoint
        else:
            hi = midpoint
    return DirectedReal._raw(lo, hi, prec)


# certified maximisation on a ray ------------------------------------------


class RayMaxProblem:
    """Interface for ``max_on_ray``.

    Subclasses supply an interval extension ``enclose`` and a rigorous upper
    bound ``tail_upper`` for the supremum on ``[x_hi, inf)``.
    """

    x_lo: Fraction
    x_hi: Fraction
    log_spaced: bool = False

    def enclose(self, cell: DirectedReal) -> DirectedReal:
        raise NotImplementedError

    def tail_upper(self, prec: int):
        raise NotImplementedError


@dataclass(frozen=True)
class PowerTerm:
    coefficient: Fraction
    log_power: int
    x_power: Fraction


class LogPowerSum(RayMaxProblem):
    """f(x) = sum of c * log(x)^m / x^p over the given terms, on x >= x_lo >= 1."""

    def __init__(self, terms: Sequence[tuple], x_lo, x_hi, log_spaced: bool = True):
        self.terms = [PowerTerm(Fraction(c), int(m), Fraction(p)) for c, m, p in terms]
        self.x_lo = Fraction(x_lo)
        self.x_hi = Fraction(x_hi)
        self.log_spaced = log_spaced
        if self.x_lo < 1:
            raise DomainViolation("LogPowerSum needs x_lo >= 1")
        if any(t.x_power <= 0 for t in self.terms):
            raise DomainViolation("LogPowerSum needs positive powers of x")

    def _power(self, cell: DirectedReal, exponent: Fraction) -> DirectedReal:
        if exponent.denominator == 1:
            return cell ** int(exponent)
        return cell ** DirectedReal.exact(exponent, cell.prec)

    def _natural(self, cell: DirectedReal, logs: DirectedReal) -> DirectedReal:
        total = DirectedReal.exact(0, cell.prec)
        for term in self.terms:
            value = logs ** term.log_power / self._power(cell, term.x_power)
            total = total + value * DirectedReal.exact(term.coefficient, cell.prec)
        return total

    def derivative(self, cell: DirectedReal) -> DirectedReal:
        # d/dx c L^m x^-p = c x^(-p-1) (m L^(m-1) - p L^m)
        prec = cell.prec
        logs = cell.log()
        total = DirectedReal.exact(0, prec)
        for term in self.terms:
            inner = -DirectedReal.exact(term.x_power, prec) * logs ** term.log_power
            if term.log_power:
                inner = inner + term.log_power * logs ** (term.log_power - 1)
            value = inner / self._power(cell, term.x_power + 1)
            total = total + value * DirectedReal.exact(term.coefficient, prec)
        return total

    def enclose(self, cell: DirectedReal) -> DirectedReal:
        natural = self._natural(cell, cell.log())
        if cell.is_point():
            return natural
        # mean value form, intersected with the natural extension
        centre = DirectedReal._raw(cell.mid, cell.mid, cell.prec)
        slope = self.derivative(cell)
        mean_value = self._natural(centre, centre.log()) + slope * (cell - centre)
        return DirectedReal._raw(max(natural.lo, mean_value.lo), min(natural.hi, mean_value.hi), cell.prec)

    def tail_upper(self, prec: int):
        big = DirectedReal.exact(self.x_hi, prec)
        log_big = big.log()
        bound = DirectedReal.exact(0, prec)
        for term in self.terms:
            if term.coefficient <= 0:
                continue
            # c * L^m / x^p is decreasing once log x >= m / p
            if log_big.lo < DirectedReal.exact(Fraction(term.log_power) / term.x_power, prec).hi:
                raise TailError("tail start precedes the decreasing range of a positive term")
            value = DirectedReal.exact(term.coefficient, prec) * log_big ** term.log_power
            bound = bound + value / big ** DirectedReal.exact(term.x_power, prec)
        return max(bound.hi, mpfr(0))


class CallableRayProblem(RayMaxProblem):
    def __init__(self, enclose: Callable[[DirectedReal], DirectedReal], x_lo, x_hi, tail_upper: Callable[[int], object], log_spaced=False):
        self._enclose = enclose
        self._tail = tail_upper
        self.x_lo = Fraction(x_lo)
        self.x_hi = Fraction(x_hi)
        self.log_spaced = log_spaced

    def enclose(self, cell):
        return self._enclose(cell)

    def tail_upper(self, prec):
        return self._tail(prec)


@dataclass(frozen=True)
class RayMax:
    upper: object
    lower: object
    argmax_cell: DirectedReal
    tail: object
    evaluations: int

    def as_interval(self, prec: int) -> DirectedReal:
        return DirectedReal._raw(down(prec).plus(self.lower), up(prec).plus(self.upper), prec)


def _grid(problem: RayMaxProblem, count: int, prec: int):
    ctx = nearest(prec)
    a = DirectedReal.exact(problem.x_lo, prec)
    b = DirectedReal.exact(problem.x_hi, prec)
    points = [a.lo]
    if problem.log_spaced:
        la, lb = ctx.log(a.mid), ctx.log(b.mid)
        for i in range(1, count):
            points.append(ctx.exp(la + (lb - la) * i / count))
    else:
        for i in range(1, count):
            points.append(a.mid + (b.mid - a.mid) * i / count)
    points.append(b.hi)
    cleaned = [points[0]]
    for p in points[1:]:
        if p > cleaned[-1]:
            cleaned.append(p)
    return cleaned


def max_on_ray(
    problem: RayMaxProblem,
    prec: int = DEFAULT_PRECISION,
    grid_points: int = 2 ** 14,
    tol=None,
    max_evaluations: int = 200_000,
) -> RayMax:
    """Certified upper bound for ``sup f`` on ``[x_lo, inf)``.

    The window ``[x_lo, x_hi]`` is covered by cells evaluated with interval
    arithmetic; the highest cells are refined by branch and bound until the
    gap to the best certified point value is below ``tol``.  The ray beyond
    ``x_hi`` is covered by the problem's tail majorant.
    """
    if tol is None:
        tol = mpfr(2) ** -36
    points = _grid(problem, grid_points, prec)
    heap = []
    best_lower = None
    evaluations = 0
    counter = 0
    nctx = nearest(prec)
    for left, right in zip(points, points[1:]):
        cell = DirectedReal._raw(left, right, prec)
        value = problem.enclose(cell)
        evaluations += 1
        heapq.heappush(heap, (-value.hi, counter, left, right))
        counter += 1
    for p in points:
        value = problem.enclose(DirectedReal._raw(p, p, prec))
        evaluations += 1
        if best_lower is None or value.lo > best_lower:
            best_lower = value.lo
    while True:
        neg_upper, _, left, right = heap[0]
        upper = -neg_upper
        gap = upper - best_lower
        if gap <= tol * max(abs(upper), mpfr(1)) or evaluations >= max_evaluations:
            break
        heapq.heappop(heap)
        midpoint = nctx.div_2exp(nctx.add(left, right), 1)
        if not left < midpoint < right:
            heapq.heappush(heap, (neg_upper, counter, left, right))
            counter += 1
            break
        point_value = problem.enclose(DirectedReal._raw(midpoint, midpoint, prec))
        if point_value.lo > best_lower:
            best_lower = point_value.lo
        for a, b in ((left, midpoint), (midpoint, right)):
            value = problem.enclose(DirectedReal._raw(a, b, prec))
            heapq.heappush(heap, (-value.hi, counter, a, b))
            counter += 1
        evaluations += 3
    neg_upper, _, left, right = heap[0]
    scan_upper = -neg_upper
    tail = problem.tail_upper(prec)
    if tail > scan_upper:
        raise TailError(f"tail bound {float(tail):.6g} exceeds scanned maximum {float(scan_upper):.6g}")
    return RayMax(scan_upper, best_lower, DirectedReal._raw(left, right, prec), tail, evaluations)


# expression evaluation -----------------------------------------------------

_FUNCTIONS = {
    "sqrt": sqrt,
    "log": log,
    "exp": exp,
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "cot": cot,
    "sec": sec,
    "csc": csc,
    "cosh": cosh,
    "W": W,
}


def interval_eval(expression: str, env: dict | None = None, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """Evaluate an arithmetic expression with interval semantics.

    Numeric literals are read from their source text, so ``0.1`` means the
    exact decimal one tenth.  Names resolve through ``env`` and the built-in
    constants ``pi``, ``e`` and ``euler``.
    """
    env = dict(env or {})
    tree = ast.parse(expression.strip(), mode="eval")
    source = expression.strip()

    def literal(node):
        text = ast.get_source_segment(source, node)
        return Fraction(text.replace("_", "")) if text else Fraction(node.value)

    def visit(node):
        if isinstance(node, ast.Expression):
            return visit(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return DirectedReal.exact(literal(node), prec)
        if isinstance(node, ast.Name):
            if node.id in env:
                return DirectedReal.exact(env[node.id], prec)
            if node.id == "pi":
                return pi(prec)
            if node.id == "e":
                return e_const(prec)
            if node.id == "euler":
                return euler_gamma(prec)
            raise NameError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp):
            operand = visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -operand
            if isinstance(node.op, ast.UAdd):
                return operand
        if isinstance(node, ast.BinOp):
            left = visit(node.left)
            if isinstance(node.op, ast.Pow):
                exponent = node.right
                negate = False
                if isinstance(exponent, ast.UnaryOp) and isinstance(exponent.op, ast.USub):
                    exponent, negate = exponent.operand, True
                if isinstance(exponent, ast.Constant) and isinstance(exponent.value, int):
                    n = -exponent.value if negate else exponent.value
                    return left ** n
                return left ** visit(node.right)
            right = visit(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCTIONS:
            if len(node.args) != 1 or node.keywords:
                raise ValueError(f"{node.func.id} takes exactly one argument")
            return _FUNCTIONS[node.func.id](visit(node.args[0]))
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return visit(tree)
