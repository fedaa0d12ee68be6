"""Explicit exponential-sum bounds and a brute-force oracle.

All bounds are returned as ``DirectedReal`` enclosures; an upper bound on an
exponential sum is the ``hi`` endpoint.  The oracle works in floating point
with an a-priori error estimate and is meant for testing the bounds, not for
certification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import gmpy2
import numpy as np

from .errors import CapExceeded, DomainViolation, VdcertError
from .numerics import DEFAULT_PRECISION, DirectedReal, nearest, pi
from .report import Certificate, check, finish, le, lt, gt

ORACLE_CAP = 10 ** 7
CHUNK = 2 ** 16
UNIFORM_ETA3 = "4.7399"
UNIFORM_H = 3


def _iv(value, prec: int) -> DirectedReal:
    return DirectedReal.exact(value, prec)


# elementary bounds ---------------------------------------------------------


def trivial_bound(N: int) -> int:
    return int(N)


def kuzmin_landau(lambda1, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    lam = _iv(lambda1, prec)
    if lam.lo <= 0:
        raise DomainViolation("Kuzmin-Landau needs lambda1 > 0")
    return 2 / (pi(prec) * lam)


def kuzmin_landau_general(lambda1, mu1, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    lam, mu = _iv(lambda1, prec), _iv(mu1, prec)
    if lam.lo <= 0 or mu.lo <= 0:
        raise DomainViolation("corridor margins must be positive")
    if (lam + mu).lo > 1:
        raise DomainViolation("corridor margins exceed one period")
    return (1 / lam + 1 / mu) / pi(prec)


def second_derivative_split(lambda2, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """The internal split point sqrt(lambda2 / pi)."""
    return (_iv(lambda2, prec) / pi(prec)).sqrt()


def second_derivative_bound(N, h, lambda2, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    n, hh, lam = _iv(N, prec), _iv(h, prec), _iv(lambda2, prec)
    if lam.lo <= 0 or hh.lo <= 1 or n.lo < 1:
        raise DomainViolation("need N >= 1, h > 1, lambda2 > 0")
    four_over_root_pi = 4 / pi(prec).sqrt()
    root = lam.sqrt()
    return four_over_root_pi * n * hh * root + n * hh * lam + four_over_root_pi / root


def second_derivative_coefficients(prec: int = DEFAULT_PRECISION):
    root_pi = pi(prec).sqrt()
    return (2 + (4 + pi(prec)).sqrt()) / root_pi, 4 / root_pi


def second_derivative_lambda0(prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return 1 + 4 * (2 - (4 + pi(prec)).sqrt()) / pi(prec)


def second_derivative_AB(N, h, lambda2, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    A2, B2 = second_derivative_coefficients(prec)
    n, hh, lam = _iv(N, prec), _iv(h, prec), _iv(lambda2, prec)
    if lam.lo <= 0:
        raise DomainViolation("lambda2 must be positive")
    return A2 * n * hh * lam.sqrt() + B2 / lam.sqrt()


# third and higher derivative constants -----------------------------------------


@dataclass(frozen=True)
class ThirdDerivConstants:
    A3: DirectedReal
    B3: DirectedReal
    lambda0: DirectedReal
    delta3: DirectedReal
    kappa: DirectedReal


def third_derivative_constants(eta3, h, prec: int = DEFAULT_PRECISION) -> ThirdDerivConstants:
    eta, hh = _iv(eta3, prec), _iv(h, prec)
    # h = 1 is accepted as the limiting case h -> 1+
    if eta.lo <= 0 or hh.lo < 1:
        raise DomainViolation("need eta3 > 0 and h >= 1")
    root_pi = pi(prec).sqrt()
    third = Fraction(1, 3)
    lambda0 = (1 / eta + 32 * eta.sqrt() * hh / (15 * root_pi)) ** -3
    cube_root = lambda0 ** _iv(third, prec)
    kappa_half = (1 + Fraction(3, 8) * root_pi * eta ** _iv(Fraction(3, 2), prec)).sqrt()
    delta3 = (Fraction(1, 2) + kappa_half / 2).sqrt()
    inner = 1 / (eta * hh) + 32 / (15 * root_pi) * (eta + cube_root).sqrt() + (eta + cube_root) * cube_root / 3
    A3 = inner.sqrt() * delta3
    B3 = _iv(32, prec).sqrt() / (_iv(3, prec).sqrt() * root_pi.sqrt() * eta ** _iv(Fraction(1, 4), prec)) * delta3
    return ThirdDerivConstants(A3, B3, lambda0, delta3, delta3 * delta3 - 1)


def delta_j(j: int, eta3, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    J = 2 ** (j - 1)
    eta = _iv(eta3, prec)
    base = 9 * pi(prec) / 1024 * eta
    return (1 + 2 / _iv(2337, prec) ** _iv(Fraction(J - 2, J), prec) * base ** _iv(Fraction(1, J), prec)).sqrt()


def a_coefficient(J: int, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return _iv(2, prec) ** _iv(Fraction(19, 12), prec) * (J - 1) / _iv((2 * J - 1) * (4 * J - 3), prec).sqrt()


def b_coefficient(J: int, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return _iv(2, prec) ** _iv(Fraction(3, 2), prec) * (J - 1) / _iv((2 * J - 3) * (4 * J - 5), prec).sqrt()


@dataclass(frozen=True)
class DerivTestConstants:
    k: int
    eta3: object
    h: object
    A: DirectedReal
    B: DirectedReal
    deltas: dict = field(default_factory=dict)
    a_factors: dict = field(default_factory=dict)
    b_factors: dict = field(default_factory=dict)
    levels: tuple = ()
    lambda0: DirectedReal | None = None
    delta3: DirectedReal | None = None
    kappa: DirectedReal | None = None

    @property
    def K(self) -> int:
        return 2 ** (self.k - 1)


def kth_derivative_constants(k: int, eta3=None, h=None, prec: int = DEFAULT_PRECISION) -> DerivTestConstants:
    """Constants (A_k, B_k) of the k-th derivative test with all intermediates.

    ``levels`` holds the pairs (A_j, B_j) for j = 3..k.
    """
    if k == 2:
        A2, B2 = second_derivative_coefficients(prec)
        return DerivTestConstants(2, eta3, h, A2, B2)
    if k < 2:
        raise DomainViolation("derivative order must be at least 2")
    third = third_derivative_constants(eta3, h, prec)
    hh = _iv(h, prec)
    A, B = third.A3, third.B3
    levels = [(A, B)]
    deltas, a_factors, b_factors = {}, {}, {}
    for j in range(3, k):
        J = 2 ** (j - 1)
        deltas[j] = d = delta_j(j, eta3, prec)
        a_factors[j] = a_coefficient(J, prec)
        b_factors[j] = b_coefficient(J, prec)
        A = d * (hh ** _iv(Fraction(-1, J), prec) + a_factors[j] * A.sqrt())
        B = d * b_factors[j] * B.sqrt()
        levels.append((A, B))
    return DerivTestConstants(k, eta3, h, A, B, deltas, a_factors, b_factors, tuple(levels),
                              third.lambda0, third.delta3, third.kappa)


@dataclass(frozen=True)
class DerivTestParams:
    k: int
    a: int
    N: int
    h: object
    lambda_k: object

    @property
    def K(self) -> int:
        return 2 ** (self.k - 1)


def kth_derivative_bound(params: DerivTestParams, constants: DerivTestConstants, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """A_k h^(2/K) N lam^(1/(2K-2)) + B_k N^(1-2/K) lam^(-1/(2K-2))."""
    if params.k != constants.k:
        raise VdcertError(f"order mismatch: parameters k={params.k}, constants k={constants.k}")
    K = params.K
    n, hh, lam = _iv(params.N, prec), _iv(params.h, prec), _iv(params.lambda_k, prec)
    if lam.lo <= 0 or n.lo < 1:
        raise DomainViolation("need N >= 1 and lambda_k > 0")
    lam_power = lam ** _iv(Fraction(1, 2 * K - 2), prec)
    h_power = hh ** _iv(Fraction(2, K), prec)
    n_power = n ** _iv(Fraction(K - 2, K), prec) if K > 2 else _iv(1, prec)
    return constants.A * h_power * n * lam_power + constants.B * n_power / lam_power


def kth_lambda0(k: int, eta3, N, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """Threshold below which the B-term alone exceeds N."""
    K = 2 ** (k - 1)
    base = 9 * pi(prec) / 1024 * _iv(eta3, prec)
    return base ** _iv(Fraction(-2 * K + 2, K), prec) * _iv(N, prec) ** _iv(Fraction(-4 * K + 4, K), prec)


def uniform_kth_constants(k_max: int = 60, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Certify A_k <= 2.762 and B_k <= 1.02 for every k >= 10 (eta3 = 4.7399, 1 < h <= 3).

    Direct values are checked for 10 <= k <= k_max; the tail k > k_max is
    covered by the fixed-point induction whose ingredients are certified too.
    """
    if k_max < 10:
        raise DomainViolation("k_max must be at least 10")
    cert = Certificate("uniform k-th derivative constants")
    at_three = kth_derivative_constants(k_max, UNIFORM_ETA3, UNIFORM_H, prec)
    # A_k decreases in h, so the supremum over 1 < h <= 3 is the limit h -> 1
    at_one = kth_derivative_constants(k_max, UNIFORM_ETA3, 1, prec)
    A10, B10 = at_three.levels[10 - 3]
    cert.add(check("A_10(4.7399, 3)", le("2.744"), A10))
    cert.add(check("B_10(4.7399)", le("1.020"), B10))
    d10 = at_three.deltas[10]
    root = (_iv(2, prec) ** _iv(Fraction(-11, 12), prec)) * d10
    x_star = (root + (root * root + d10).sqrt()) ** 2
    cert.values.update(A10=A10, B10=B10, delta10=d10, x_star=x_star)
    cert.add(check("fixed point x*", le("2.762"), x_star))
    cert.add(check("A_10(4.7399, h -> 1) below x*", le(x_star, "x*"), at_one.levels[10 - 3][0]))
    b_step = d10 * b_coefficient(2 ** 9, prec)
    cert.add(check("delta_10 * B-coefficient(K=512)", le("1.002"), b_step))
    cert.add(check("B induction step 1.002*sqrt(1.02)", le("1.02"), _iv("1.002", prec) * _iv("1.02", prec).sqrt()))
    cert.add(check("fixed point y* = 1.002^2", lt("1.02"), _iv("1.002", prec) ** 2))
    cert.add(check("delta_j decreasing: 2337^2 (9 pi/1024) eta3", gt("1"),
                   _iv(2337 ** 2, prec) * 9 * pi(prec) / 1024 * _iv(UNIFORM_ETA3, prec)))
    worst_a = worst_b = None
    for k in range(10, k_max + 1):
        A_hi = at_three.levels[k - 3][0].max(at_one.levels[k - 3][0])
        B_k = at_three.levels[k - 3][1]
        worst_a = A_hi if worst_a is None else worst_a.max(A_hi)
        worst_b = B_k if worst_b is None else worst_b.max(B_k)
    cert.add(check(f"max A_k, 10<=k<={k_max}, 1<h<=3", le("2.762"), worst_a))
    cert.add(check(f"max B_k, 10<=k<={k_max}", le("1.02"), worst_b))
    cert.values.update(max_A=worst_a, max_B=worst_b)
    return finish(cert, strict)


# sum inequality -------------------------------------------------------------


def weighted_power_sum_bound(q: int, s, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """Majorant q^(1+s)/((1+s)(2+s)) of sum_{r<=q} (1 - r/q) r^s."""
    ss = _iv(s, prec)
    if q < 1:
        raise DomainViolation("q must be a positive integer")
    if ss.lo <= -1 or ss.hi > 1:
        raise DomainViolation("exponent must lie in (-1, 1]")
    return _iv(q, prec) ** (1 + ss) / ((1 + ss) * (2 + ss))


def weighted_power_sum(q: int, s) -> float:
    return math.fsum((1 - r / q) * r ** float(s) for r in range(1, q + 1))


# phase functions and the oracle -----------------------------------------------


_LD = np.longdouble
_LD_EPS = float(np.finfo(np.longdouble).eps)


class PhaseFunction:
    """A real phase f with fractional parts of f(n) on (a, a+N] available.

    ``phases`` returns frac(f(n)) as long doubles together with an a-priori
    bound on the absolute error of each phase (in turns).
    """

    kind = "user"

    def phases(self, a: int, N: int):
        raise NotImplementedError

    def derivative(self, x: float, order: int) -> float:
        raise NotImplementedError


class ZetaLogPhase(PhaseFunction):
    """f(x) = -(t / 2 pi) log x."""

    kind = "zeta-log"

    def __init__(self, t, offset_budget: float = 1024.0):
        self.t = Fraction(t)
        ctx = nearest(192)
        self.c = ctx.div(ctx.div(gmpy2.mpz(self.t.numerator), gmpy2.mpz(self.t.denominator)), ctx.mul(2, ctx.const_pi()))
        self.offset_budget = offset_budget

    def derivative(self, x: float, order: int) -> float:
        if order == 0:
            return -float(self.c) * math.log(x)
        return -float(self.c) * (-1) ** (order - 1) * math.factorial(order - 1) / x ** order

    def derivative_envelope(self, a: int, N: int, order: int, prec: int = DEFAULT_PRECISION):
        """(lambda, h) with lambda <= |f^(order)| <= h lambda on [a, a+N]."""
        if a < 1:
            raise DomainViolation("zeta-log phase needs a >= 1")
        c = _iv(self.t, prec) / (2 * pi(prec))
        lam = c * math.factorial(order - 1) / _iv(a + N, prec) ** order
        h = (_iv(a + N, prec) / a) ** order
        return lam, h

    def phases(self, a: int, N: int):
        if a < 0:
            raise DomainViolation("zeta-log phase needs a >= 0")
        ctx = nearest(128)
        c = self.c
        c_ld = _LD(float(c)) + _LD(float(c - float(c)))
        block = max(1, int(self.offset_budget * (a + 1) / max(float(c), 1.0)))
        block = min(block, N)
        starts = range(a + 1, a + N + 1, block)
        # frac(-c log n0) = 1 - frac(c log n0), carried as a pair of doubles
        fracs = [ctx.frac(ctx.mul(c, ctx.log(n0))) for n0 in starts]
        high = np.array([float(v) for v in fracs], dtype=np.float64)
        low = np.array([float(v - float(v)) for v in fracs], dtype=np.float64)
        base = _LD(1) - (high.astype(_LD) + low.astype(_LD))
        offsets = np.arange(block, dtype=_LD)
        n0s = np.asarray(starts, dtype=_LD)[:, None]
        shift = -c_ld * np.log1p(offsets[None, :] / n0s)
        total = base[:, None] + shift
        total = total - np.floor(total)
        flat = total.reshape(-1)[:N]
        magnitude = float(c) * block / (a + 1)
        error = (magnitude + 2.0) * 8 * _LD_EPS + 2.0 ** -100
        return flat, error


class PolynomialPhase(PhaseFunction):
    """f(x) = sum of coefficients[m] x^m with exact rational coefficients."""

    kind = "polynomial"

    def __init__(self, coefficients: Sequence):
        self.coefficients = [Fraction(c) for c in coefficients]

    def derivative(self, x: float, order: int) -> float:
        total = 0.0
        for m, c in enumerate(self.coefficients):
            if m >= order:
                total += float(c) * math.perm(m, order) * x ** (m - order)
        return total

    def phases(self, a: int, N: int):
        denominator = 1
        for c in self.coefficients:
            denominator = denominator * c.denominator // math.gcd(denominator, c.denominator)
        numerators = [int(c * denominator) for c in self.coefficients]
        residues = np.empty(N, dtype=_LD)
        inv = _LD(1) / _LD(denominator)
        for i, n in enumerate(range(a + 1, a + N + 1)):
            acc = 0
            for coefficient in reversed(numerators):
                acc = (acc * n + coefficient) % denominator
            residues[i] = _LD(acc) * inv if denominator < 2 ** 63 else _LD(Fraction(acc, denominator).__float__())
        error = 2 * _LD_EPS if denominator < 2 ** 63 else 2.0 ** -52
        return residues, error


class CallablePhase(PhaseFunction):
    """User phase given by a vectorised callable returning f(n) for an integer array."""

    def __init__(self, func: Callable, derivative: Callable | None = None, error: float = 1e-15):
        self.func = func
        self._derivative = derivative
        self.error = error

    def derivative(self, x, order):
        if self._derivative is None:
            raise NotImplementedError("no derivative evaluator supplied")
        return self._derivative(x, order)

    def phases(self, a: int, N: int):
        values = np.asarray(self.func(np.arange(a + 1, a + N + 1, dtype=np.int64)), dtype=_LD)
        return values - np.floor(values), self.error


@dataclass(frozen=True)
class OracleValue:
    value: float
    error: float


def _sum_unit_phases(phases: np.ndarray, phase_error: float) -> OracleValue:
    n = len(phases)
    real_parts, imag_parts = [], []
    two_pi = _LD(str(nearest(128).mul(2, nearest(128).const_pi())))
    for start in range(0, n, CHUNK):
        angles = two_pi * phases[start:start + CHUNK]
        real_parts.append(math.fsum(np.cos(angles).astype(np.float64).tolist()))
        imag_parts.append(math.fsum(np.sin(angles).astype(np.float64).tolist()))
    real = math.fsum(real_parts)
    imag = math.fsum(imag_parts)
    value = math.hypot(real, imag)
    per_term = 2 * math.pi * (phase_error + 2 * _LD_EPS) + 2.0 ** -52
    error = n * math.sqrt(2) * per_term + (len(real_parts) + 2) * 2.0 ** -52 * max(value, 1.0)
    return OracleValue(value, error)


def brute_force_expsum_with_error(f: PhaseFunction, a: int, N: int, cap: int = ORACLE_CAP) -> OracleValue:
    if N > cap:
        raise CapExceeded(f"N = {N} exceeds oracle cap {cap}")
    if N <= 0:
        return OracleValue(0.0, 0.0)
    phases, error = f.phases(a, N)
    return _sum_unit_phases(phases, error)


def brute_force_expsum(f: PhaseFunction, a: int, N: int, cap: int = ORACLE_CAP) -> float:
    """|sum_{a < n <= a+N} e(f(n))| by direct summation."""
    return brute_force_expsum_with_error(f, a, N, cap).value


def a_process_sides(f: PhaseFunction, a: int, N: int, q: int, cap: int = ORACLE_CAP):
    """Both sides of the Weyl-differencing inequality, evaluated by brute force.

    Returns (lhs, rhs, error) where lhs = S_f(a, N)^2.
    """
    if q < 1 or N < 1:
        raise DomainViolation("need q >= 1 and N >= 1")
    if N > cap:
        raise CapExceeded(f"N = {N} exceeds oracle cap {cap}")
    phases, error = f.phases(a, N)
    main = _sum_unit_phases(phases, error)
    weighted, weighted_error = [], 0.0
    for r in range(1, q):
        if N - r <= 0:
            continue
        shifted = phases[r:] - phases[:-r]
        shifted = shifted - np.floor(shifted)
        part = _sum_unit_phases(shifted, 2 * error)
        weighted.append((1 - r / q) * part.value)
        weighted_error += (1 - r / q) * part.error
    rhs = (N - 1 + q) * (N / q + 2 / q * math.fsum(weighted))
    rhs_error = (N - 1 + q) * 2 / q * weighted_error
    lhs = main.value ** 2
    lhs_error = 2 * main.value * main.error + main.error ** 2
    return lhs, rhs, lhs_error + rhs_error + 1e-12 * max(lhs, rhs)


def a_process_check(f: PhaseFunction, a: int, N: int, q: int, cap: int = ORACLE_CAP) -> bool:
    lhs, rhs, error = a_process_sides(f, a, N, q, cap)
    return lhs <= rhs + error


# random admissible instances and oracle dominance ---------------------------------


@dataclass(frozen=True)
class ZetaInstance:
    """A zeta-log phase sum on (a, a+N] whose k-th derivative ratio is at most 3."""

    index: int
    k: int
    t: Fraction
    a: int
    N: int
    eta3: Fraction

    def label(self) -> str:
        return f"instance {self.index:04d} (k={self.k}, t={float(self.t):.6g}, a={self.a}, N={self.N})"


def random_instances(count: int, seed: int, k_range=(3, 8), t_range=(10 ** 3, 10 ** 9), n_max: int = 10 ** 5):
    """Deterministic sample of admissible instances.

    k is uniform, t and N are log-uniform, and lambda_k is log-uniform in
    [N^(-2+2/K), N^(-1+1/K)], restricted so that a >= N / (3^(1/k) - 1),
    which keeps h = ((a+N)/a)^k <= 3.
    """
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(*k_range)
        K = 2 ** (k - 1)
        t = 10 ** rng.uniform(math.log10(t_range[0]), math.log10(t_range[1]))
        N = int(10 ** rng.uniform(math.log10(2), math.log10(n_max)))
        a_min = math.ceil(N / (3 ** (1 / k) - 1))
        scale = math.factorial(k - 1) * t / (2 * math.pi)
        lam_lo = N ** (-2 + 2 / K)
        lam_hi = min(N ** (-1 + 1 / K), scale / (a_min + N) ** k)
        if not lam_lo < lam_hi:
            continue
        lam = math.exp(rng.uniform(math.log(lam_lo), math.log(lam_hi)))
        a = int((scale / lam) ** (1 / k)) - N
        if a < a_min:
            continue
        # flooring a moves lambda_k; keep only instances still inside the corridor
        realised = scale / (a + N) ** k
        if not lam_lo <= realised <= N ** (-1 + 1 / K):
            continue
        eta3 = Fraction(round(math.exp(rng.uniform(math.log(0.5), math.log(5.0))), 6)).limit_denominator(10 ** 6)
        out.append(ZetaInstance(len(out), k, Fraction(t), a, N, eta3))
    return out


@dataclass(frozen=True)
class DominanceResult:
    instance: ZetaInstance
    oracle: OracleValue
    bounds: dict
    margin: DirectedReal

    @property
    def violated(self) -> bool:
        # a violation is certain only if some bound lies below the oracle value
        return self.margin.hi < -1e-6


def instance_bounds(instance: ZetaInstance, prec: int = DEFAULT_PRECISION) -> dict:
    """Every applicable bound for the instance, keyed by test name."""
    phase = ZetaLogPhase(instance.t)
    a, N = instance.a, instance.N
    bounds = {"trivial": _iv(N, prec)}
    for order in range(2, instance.k + 1):
        lam, h = phase.derivative_envelope(a, N, order, prec)
        h_hi = _iv(h.hi, prec)
        if order == 2:
            bounds["second derivative"] = second_derivative_bound(N, h_hi, lam, prec)
            bounds["second derivative (A2, B2)"] = second_derivative_AB(N, h_hi, lam, prec)
            continue
        constants = kth_derivative_constants(order, instance.eta3, h_hi, prec)
        params = DerivTestParams(order, a, N, h_hi, lam)
        bounds[f"derivative test k={order}"] = kth_derivative_bound(params, constants, prec)
    c = _iv(instance.t, prec) / (2 * pi(prec))
    slope_lo, slope_hi = c / (a + N), c / a
    level = math.floor(slope_lo.lo)
    if math.floor(slope_hi.hi) == level and slope_lo.lo > level:
        lam1, mu1 = slope_lo - level, (level + 1) - slope_hi
        bounds["Kuzmin-Landau (general)"] = kuzmin_landau_general(lam1, mu1, prec)
    return bounds


def oracle_dominance(instance: ZetaInstance, prec: int = DEFAULT_PRECISION) -> DominanceResult:
    oracle = brute_force_expsum_with_error(ZetaLogPhase(instance.t), instance.a, instance.N)
    bounds = instance_bounds(instance, prec)
    worst = min(bounds.values(), key=lambda value: value.lo)
    margin = worst - _iv(oracle.value, prec) - _iv(oracle.error, prec)
    return DominanceResult(instance, oracle, bounds, margin)
