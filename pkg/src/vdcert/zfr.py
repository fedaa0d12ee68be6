"""Zero-free-region constants: smoothing function, zero-sum lemmas, the two
contradiction chains, and a comparator for published region shapes.

Heights are handled through log t throughout; t0 = exp(170.2) and
t1 = exp(967.6) are never formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .errors import BracketError, DomainViolation
from .numerics import (
    DEFAULT_PRECISION,
    DirectedReal,
    LogPowerSum,
    W,
    bisect_root,
    e_const,
    euler_gamma,
    max_on_ray,
    pi,
)
from .report import Certificate, check, digits, finish, ge, gt, le, lt, within

RAY_GRID = 1024


def _iv(value, prec: int) -> DirectedReal:
    return DirectedReal.exact(value, prec)


@dataclass(frozen=True)
class TrigPolyData:
    """Coefficient data of the non-negative cosine polynomial of degree D.

    ``log_weight`` is the constant c with (1/b) sum b_j log(j t) <= L1 - c;
    it depends on the individual coefficients and is a trusted input.
    """

    D: int = 46
    b0: str = "1"
    b1: str = "1.74708744081848"
    b: str = "3.57440943022073"
    log_weight: str = "3.377"


@dataclass(frozen=True)
class ZfrConfig:
    """Inputs of the contradiction argument.  Counting constants for S(t)
    (``q_log``, ``q_loglog``, ``q_const``) and the Ford-Richert pair
    (``A_fr``, ``B_fr``) are configured, not derived."""

    poly: TrigPolyData = field(default_factory=TrigPolyData)
    alpha: str = "0.13913"
    M1: str = "0.0470978"
    log_t0: str = "170.2"
    log_t1: str = "967.6"
    rh_height: str = "5.45e8"
    A_fr: str = "76.2"
    B_fr: str = "4.45"
    R: str = "441.729"
    R_prime: str = "350.588"
    E: str = "30.95461"
    lemma_t0: str = "3e12"
    delta_small: str = "0.90114"
    delta_large: str = "1.2185"
    eta0: Fraction = Fraction(2, 7)
    q_log: str = "0.11"
    q_loglog: str = "0.29"
    q_const: str = "2.305"

    def with_overrides(self, **values) -> "ZfrConfig":
        poly_keys = {"D", "b0", "b1", "b", "log_weight"}
        poly = replace(self.poly, **{k: v for k, v in values.items() if k in poly_keys})
        rest = {k: v for k, v in values.items() if k not in poly_keys}
        return replace(self, poly=poly, **rest)


DEFAULT_CONFIG = ZfrConfig()


# smoothing function --------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothingConstants:
    theta: DirectedReal
    g0: DirectedReal
    gprime0: DirectedReal
    c0: DirectedReal
    c1: DirectedReal
    c2: DirectedReal
    c3: DirectedReal

    @property
    def prec(self) -> int:
        return self.theta.prec


def theta_equation(ratio, prec: int = DEFAULT_PRECISION):
    r = _iv(ratio, prec)

    def equation(x: DirectedReal) -> DirectedReal:
        return x.sin() ** 2 - r * (1 - x * x.cot())

    return equation


def theta_sign_changes(ratio, prec: int = DEFAULT_PRECISION, cells: int = 2000) -> int:
    """Count certified sign changes of the theta equation on a grid of (0, pi/2)."""
    equation = theta_equation(ratio, prec)
    half_pi = pi(prec) / 2
    signs = []
    for i in range(1, cells):
        x = half_pi * Fraction(i, cells)
        x = DirectedReal(x.mid, x.mid, prec)
        value = equation(x)
        if value.lo > 0:
            signs.append(1)
        elif value.hi < 0:
            signs.append(-1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@lru_cache(maxsize=16)
def smoothing_constants(poly: TrigPolyData = TrigPolyData(), prec: int = DEFAULT_PRECISION) -> SmoothingConstants:
    ratio = Fraction(poly.b1) / Fraction(poly.b0)
    if ratio <= 0:
        raise DomainViolation("b1/b0 must be positive")
    equation = theta_equation(ratio, prec)
    half_pi = pi(prec) / 2
    theta = bisect_root(equation, Fraction(1, 100), half_pi.lo * (1 - Fraction(1, 10 ** 6)), prec)
    sec2 = 1 / theta.cos() ** 2
    tan, cot = theta.tan(), theta.cot()
    sin, cos = theta.sin(), theta.cos()
    g0 = sec2 * (theta * tan + 3 * theta * cot - 3)
    csc2 = 1 / sin ** 2
    gprime0 = csc2 * (3 * (4 * theta ** 2 - 5) + theta * (15 - 4 * theta ** 2) * cot) / 3 - theta / (sin * cos)
    c0 = 1 / (sin * cos ** 3)
    c1 = (theta - sin * cos) * tan ** 4
    c2 = tan ** 3 * sin ** 2
    c3 = (theta - sin * cos) * tan ** 2
    return SmoothingConstants(theta, g0, gprime0, c0, c1, c2, c3)


def H_of_R(R, s: SmoothingConstants) -> DirectedReal:
    prec = s.prec
    RR = _iv(R, prec)
    tan = s.theta.tan()
    if RR.lo < 3 or RR.lo <= tan.hi:
        raise DomainViolation("need R >= 3 and R > tan(theta)")
    shrink = (1 - tan ** 2 / RR ** 2) ** 2
    inner = s.c2 * (RR + 1) / RR ** 3 * ((2 * s.theta / tan).exp() + 1) + s.c1 / RR ** 2 + s.c3
    return s.c0 / shrink * inner


def c_of_R(R, s: SmoothingConstants) -> DirectedReal:
    RR = _iv(R, s.prec)
    return H_of_R(R, s) * (RR + 1) ** 2 / (RR ** 3 * s.g0) + 1 + 1 / RR


def c_prime_of_R(R, s: SmoothingConstants) -> DirectedReal:
    return 4 / pi(s.prec) ** 2 * (c_of_R(R, s) - 1 / _iv(R, s.prec))


# lemma bounds -----------------------------------------------------------------------------------


def _eta_outside(eta: DirectedReal, low, high, open_low: bool = False) -> bool:
    """True only when eta certainly leaves [low, high] (or (low, high])."""
    if open_low and eta.hi <= low:
        return True
    return eta.hi < low or eta.lo > high


def _log_t(t, log_t, prec):
    if log_t is not None:
        return _iv(log_t, prec)
    return _iv(t, prec).log()


def zero_count_bound(t=None, eta=None, prec: int = DEFAULT_PRECISION, log_t=None, config: ZfrConfig = DEFAULT_CONFIG) -> DirectedReal:
    """N(t, eta) <= 5.9975 eta^(3/2) log t + 6.12 + ((2/3) log log t - log eta) / 1.879."""
    L = _log_t(t, log_t, prec)
    if L.hi < _iv(100, prec).log().lo:
        raise DomainViolation("need t >= 100")
    eta = _iv(eta, prec)
    if _eta_outside(eta, 0, Fraction(2, 7), open_low=True) or eta.lo <= 0:
        raise DomainViolation("need 0 < eta <= 2/7")
    return (_iv("5.9975", prec) * eta ** _iv(Fraction(3, 2), prec) * L + _iv("6.12", prec)
            + (Fraction(2, 3) * L.log() - eta.log()) / _iv("1.879", prec))


@dataclass(frozen=True)
class ZeroSumBound:
    """value - N(t, eta) * n_coefficient bounds the sum over far zeros."""

    value: DirectedReal
    n_coefficient: DirectedReal


def _lemma_t0_log(config: ZfrConfig, prec: int) -> DirectedReal:
    return _iv(config.lemma_t0, prec).log()


def zero_sum_bound_small_eta(t=None, eta=None, prec: int = DEFAULT_PRECISION, log_t=None, config: ZfrConfig = DEFAULT_CONFIG) -> ZeroSumBound:
    L = _log_t(t, log_t, prec)
    if L.hi < _lemma_t0_log(config, prec).lo:
        raise DomainViolation("need t >= 3e12")
    eta = _iv(eta, prec)
    if _eta_outside(eta, 0, Fraction(2, 7), open_low=True) or eta.lo <= 0:
        raise DomainViolation("need 0 < eta <= 2/7")
    inv_sq = 1 / eta ** 2
    value = ((_iv("23.99", prec) / eta.sqrt() - _iv("40.385", prec)) * L
             + (_iv("0.3548", prec) * inv_sq + _iv("1.2031", prec)) * L.log()
             - _iv("40.236", prec) + _iv("5.86", prec) * inv_sq - eta.log() * inv_sq / _iv("1.879", prec))
    return ZeroSumBound(value, inv_sq)


def nu_of_eta(eta, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    eta = _iv(eta, prec)
    return (1 / eta ** 2 + 1 / (1 - eta) ** 2) / 2


def zero_sum_bound_large_eta(t=None, eta=None, prec: int = DEFAULT_PRECISION, log_t=None, config: ZfrConfig = DEFAULT_CONFIG) -> ZeroSumBound:
    L = _log_t(t, log_t, prec)
    if L.hi < _lemma_t0_log(config, prec).lo:
        raise DomainViolation("need t >= 3e12")
    eta_iv = _iv(eta, prec)
    if _eta_outside(eta_iv, Fraction(2, 7), Fraction(1, 2)):
        raise DomainViolation("need 2/7 <= eta <= 1/2")
    nu = nu_of_eta(eta_iv, prec)
    value = ((_iv("0.5576", prec) + _iv("0.6079", prec) * nu) * L
             + (_iv("0.7813", prec) + _iv("0.58", prec) * nu) * L.log()
             + _iv("5.732", prec) + _iv("3.898", prec) * nu)
    return ZeroSumBound(value, 1 / eta_iv ** 2)


def log_zeta_integral_bound(branch: str, t=None, prec: int = DEFAULT_PRECISION, log_t=None, k: int | None = None,
                            eta=None, config: ZfrConfig = DEFAULT_CONFIG) -> DirectedReal:
    """Right-hand side of the smoothed log|zeta| integral bound.

    ``branch="k-line"`` uses the bound on sigma_k; ``branch="convexity"``
    interpolates between the half line and sigma = 5/7.
    """
    L = _log_t(t, log_t, prec)
    if L.hi < _lemma_t0_log(config, prec).lo:
        raise DomainViolation("need t >= 3e12")
    if branch == "k-line":
        if k is None or k < 4:
            raise DomainViolation("k-line branch needs k >= 4")
        if L.hi < (k * _iv(2, prec).log()).lo:
            raise DomainViolation("need t >= 2^k")
        return L / (2 ** k - 2) + L.log() + _iv("1.546", prec).log()
    if branch == "convexity":
        eta = _iv(eta, prec)
        if _eta_outside(eta, Fraction(2, 7), Fraction(1, 2)):
            raise DomainViolation("need 2/7 <= eta <= 1/2")
        return (8 * eta - 1) / 18 * L + L.log() + _iv("1.659", prec) - _iv("4.279", prec) * eta
    raise DomainViolation(f"unknown branch {branch!r}")


def convexity_constants(prec: int = DEFAULT_PRECISION, log_t0=None) -> tuple:
    """(log C1 + log C2, log C2) for the interpolated bound C1 C2^sigma t^((7-8 sigma)/18) log t."""
    L0 = _iv(log_t0 if log_t0 is not None else 12 * _iv(10, prec).log(), prec)
    q = _iv("1.31", prec) + Fraction(5, 7)
    ratio = q ** 2 * (-2 * L0).exp() + 1
    log_C1 = (Fraction(10, 3) * _iv("0.618", prec).log() - Fraction(7, 3) * _iv("1.546", prec).log()
              + Fraction(7, 12) * ratio.log() + (1 + ratio.log() / (2 * L0)).log())
    log_C2 = Fraction(14, 3) * (_iv("1.546", prec) / _iv("0.618", prec)).log()
    return log_C1 + log_C2, log_C2


# Lambert W pieces of the large-t branch ------------------------------------------------------------


def A0(x, alpha, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    xx, a = _iv(x, prec), _iv(alpha, prec)
    w = W(xx)
    return a * _iv(2, prec).log() * ((xx / a).log()) ** 2 / w ** 2 * (1 - 2 * w / xx)


def A1(x, alpha, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    xx, a = _iv(x, prec), _iv(alpha, prec)
    w = W(xx)
    return (w ** 2 + 2 * w - xx) * (xx / a).log() - 2 * w ** 2 - (2 - xx) * w + xx


def a1_negative_certificate(alpha, prec: int = DEFAULT_PRECISION, start="15.9", stop=10 ** 6) -> tuple:
    """Certify A1(x) < 0 on [start, inf).

    Cells on a geometric grid are bisected until their enclosure is negative;
    beyond ``stop`` the bound A1(x)/x <= log(alpha) + 1 + (L^2 + 2L)(L + 2)/x
    with L = log x (using W(x) < log x) is decreasing and negative.
    """
    ratio = Fraction(101, 100)
    cells = []
    x = Fraction(start)
    while x < stop:
        cells.append((x, min(x * ratio, Fraction(stop))))
        x = x * ratio
    worst = None
    while cells:
        a, b = cells.pop()
        value = A1(DirectedReal(_iv(a, prec).lo, _iv(b, prec).hi, prec), alpha, prec)
        if value.hi < 0:
            worst = value.hi if worst is None else max(worst, value.hi)
            continue
        if b - a < Fraction(1, 10 ** 6):
            return False, None
        mid = (a + b) / 2
        cells.extend([(a, mid), (mid, b)])
    X = _iv(stop, prec)
    L = X.log()
    tail = _iv(alpha, prec).log() + 1 + (L ** 2 + 2 * L) * (L + 2) / X
    return tail.hi < 0 and worst < 0, tail


def x_star(alpha, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    return bisect_root(lambda x: A1(x, alpha, prec), Fraction("15.7"), Fraction("15.9"), prec, rel_tol=Fraction(1, 2 ** 60))


def log_T_zfr(k: int, alpha, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """log T_k for T_k = (2^(k 2^k))^(1/alpha)."""
    return k * 2 ** k * _iv(2, prec).log() / _iv(alpha, prec)


# maximisations -------------------------------------------------------------------------------------


def _L1_from_log(log_t: DirectedReal, D: int) -> DirectedReal:
    """log(D t + 1) = log t + log(D + 1/t)."""
    return log_t + (D + (-log_t).exp()).log()


def _floor_fraction(value: DirectedReal) -> Fraction:
    return Fraction(*value.lo.as_integer_ratio())


def _ray_max(terms, x_lo: DirectedReal, prec: int, x_hi=10 ** 9) -> DirectedReal:
    problem = LogPowerSum(terms, _floor_fraction(x_lo), x_hi)
    return max_on_ray(problem, prec, grid_points=RAY_GRID).as_interval(prec)


def U_max(x_lo: DirectedReal, prec: int) -> DirectedReal:
    """sup of 13.775 log x / x^(1/2) - 40.051 log^2 x / x + (1.2031 log x - 38.58) log^2 x / x^2."""
    terms = [("13.775", 1, Fraction(1, 2)), ("-40.051", 2, 1), ("1.2031", 3, 2), ("-38.58", 2, 2)]
    return _ray_max(terms, x_lo, prec)


# chain helpers ------------------------------------------------------------------------------------


def _common(config: ZfrConfig, prec: int) -> dict:
    p = config.poly
    s = smoothing_constants(p, prec)
    return {
        "s": s,
        "b": _iv(p.b, prec) / _iv(p.b0, prec),
        "b1": _iv(p.b1, prec) / _iv(p.b0, prec),
        "M1": _iv(config.M1, prec),
        "alpha": _iv(config.alpha, prec),
        "log_t0": _iv(config.log_t0, prec),
        "log_t1": _iv(config.log_t1, prec),
        "gamma": euler_gamma(prec),
        "D": p.D,
    }


def shared_constant_items(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION) -> list:
    """Numerical constants shared by both chains: cos^2 theta, the G'(0) ratio and 0.087 pi^2 b1."""
    c = _common(config, prec)
    s = c["s"]
    items = [
        check("cos^2(theta)", ge("0.17996"), s.theta.cos() ** 2),
        check("-G'(0) / g(0)", le("0.11747"), -s.gprime0 / s.g0),
        check("(-G'(0)/g(0)) b1/b0", le("0.20523"), -s.gprime0 / s.g0 * c["b1"]),
        check("cot x - 1/x >= -0.348 x on (0, pi/4]: slope at pi/4", ge("-0.348"),
              ((pi(prec) / 4).cot() - 4 / pi(prec)) / (pi(prec) / 4)),
        check("0.087 pi^2 b1/b0", le("1.5002"), _iv("0.087", prec) * pi(prec) ** 2 * c["b1"]),
        check("1/M1", le("21.233"), 1 / c["M1"]),
    ]
    return items


def main_inequality_large_t(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Contradiction chain for t >= t1 with k = k(t) -> infinity."""
    cert = Certificate("zero-free region chain, t >= t1")
    c = _common(config, prec)
    s, b, M1, alpha, log_t1, D = c["s"], c["b"], c["M1"], c["alpha"], c["log_t1"], c["D"]
    loglog_t1 = log_t1.log()
    log_D1 = (D + (-log_t1).exp()).log()
    L1_t1 = log_t1 + log_D1
    L2_t1 = L1_t1.log()

    log_T5 = log_T_zfr(5, alpha, prec)
    cert.add(check("log T_5 (T_k = 2^(k 2^k / alpha))", lt(config.log_t1), log_T5))
    bridge = all((W(alpha * log_T_zfr(k, alpha, prec)) / _iv(2, prec).log()).contains(k) for k in range(4, 21))
    cert.add(check("W0(alpha log T_k)/log 2 = k for k = 4..20 (1 = holds)", ge(1), _iv(int(bridge), prec)))

    xs = x_star(config.alpha, prec)
    cert.values["x_star"] = xs
    cert.add(check("x* (root of A1)", digits("15.832"), xs))
    cert.add(check("A1(15.7)", gt(0), A1(Fraction("15.7"), config.alpha, prec)))
    negative, tail = a1_negative_certificate(config.alpha, prec)
    cert.add(check("A1(x) < 0 for x >= 15.9 (grid + tail)", lt(0), tail if negative else _iv(1, prec)))
    x0 = alpha * log_t1
    cert.add(check("x0 = alpha log t1 exceeds x*", gt(xs), x0))
    A0x0 = A0(x0, config.alpha, prec)
    cert.values["A0"] = A0x0
    cert.add(check("A0(x0)", le("0.3297"), A0x0))

    C1 = A0x0 / loglog_t1
    cert.add(check("C1 = A0(x0)/loglog t1", le("0.047958"), C1))
    R = _iv(config.R, prec)
    cert.add(check("C1 M1 (admissibility lambda <= eta_k/(R+1))", le(1 / (R + 1), f"1/{float(Fraction(config.R) + 1):g}"), C1 * M1))
    cR = c_of_R(config.R, s)
    cert.add(check(f"c(R), R={config.R}", le("1.02268"), cR))
    cert.add(check("c'(R) pi^2 - c(R)/eta^2 at eta = 1/2 (sum over N dropped)", lt(0), c_prime_of_R(config.R, s) * pi(prec) ** 2 - 4 * cR))

    x1_floor = (1 + alpha * e_const(prec)).exp()
    cert.add(check("log t1 >= exp(1 + alpha e)", ge(x1_floor), log_t1))
    x1 = log_t1
    C2 = Fraction(6, 5) * _iv(2, prec).log() * (1 + (log_D1 - _iv(config.poly.log_weight, prec)) / log_t1) * x1.log() / W(alpha * x1)
    cert.add(check("log(D + 1/t1) - 3.377 > 0", gt(0), log_D1 - _iv(config.poly.log_weight, prec)))
    cert.add(check("C2", le("1.58176"), C2))
    C3 = A0x0 * (1 + (1 + log_D1 / log_t1).log() / loglog_t1)
    cert.add(check("C3", le("0.32989"), C3))
    C4 = A0x0 * (A0x0.log() / loglog_t1 + 1)
    cert.add(check("C4", le("0.27649"), C4))
    gamma = c["gamma"]
    C5 = (C1 * _iv("1.546", prec).log() / 2 + C2 / 2 + C3 / 2) * b + C4 / 2 + gamma / 2 * loglog_t1 / log_t1
    cert.add(check("C5 (main term)", le("3.59415"), C5))
    C6 = _iv("1.5002", prec) * A0x0 ** 2 * M1 / loglog_t1 ** 2
    cert.add(check("C6", le("0.00017"), C6))
    cert.add(check("23.99 A0(x0)^(1/2)", le("13.775"), _iv("23.99", prec) * A0x0.sqrt()))
    C7 = U_max(L1_t1, prec)
    cert.add(check("C7 = sup U(x), x >= L1(t1)", le("1.18399"), C7))
    C8 = A0x0 ** 2 * (1 + (log_D1 / log_t1) / loglog_t1) ** 3 / loglog_t1
    cert.add(check("C8", le("0.01584"), C8))
    C9 = A0x0 ** 2 / loglog_t1 * (1 + A0x0.log() / loglog_t1) * L2_t1 / L1_t1
    cert.add(check("C9", le("0.0001"), C9))
    C10 = (L2_t1 / L1_t1) ** 2
    cert.add(check("C10 = (L2/L1)^2 at t1", le("0.00006"), C10))
    C11 = cR * M1 * (b * (C7 + _iv("2.0373", prec) * C8 + _iv("0.5322", prec) * C9) + Fraction(18, 10) * C10)
    cert.add(check("C11", le("0.20942"), C11))
    C12 = _iv(Fraction(1, 10 ** 100), prec) * (1 + log_D1 / log_t1) + log_D1
    cert.add(check("C12", le("3.82865"), C12))
    cert.add(check("1.8 + log t/3 <= (L1 - 3.377)/3 + 1.65: slack", le(0),
                   Fraction(18, 10) - _iv(D, prec).log() / 3 + _iv(config.poly.log_weight, prec) / 3 - Fraction(165, 100)))
    numerator = _iv("0.17996", prec) - _iv("0.20523", prec) * C12 / log_t1
    ratio = numerator / (C5 + C6 + C11)
    cert.add(check("final ratio (t >= t1)", ge("0.04709785"), ratio))
    cert.add(check("final ratio exceeds M1", gt(M1), ratio))
    cert.values.update(C1=C1, C2=C2, C3=C3, C4=C4, C5=C5, C6=C6, C7=C7, C8=C8, C9=C9, C10=C10, C11=C11, C12=C12,
                       c_R=cR, ratio=ratio)
    return finish(cert, strict)


def eta_of_L2(L2: DirectedReal, E: DirectedReal) -> DirectedReal:
    return 1 / (8 - E / L2)


def B3_of_log_t(log_t: DirectedReal, B2: DirectedReal, c_Rp: DirectedReal, config: ZfrConfig, prec: int) -> DirectedReal:
    b = _iv(config.poly.b, prec) / _iv(config.poly.b0, prec)
    L1 = _L1_from_log(log_t, config.poly.D)
    L2 = L1.log()
    inner = (_iv("0.891", prec) * L2 ** 2 / L1 + _iv("0.6079", prec) * B2 + _iv("0.7813", prec) * L2 ** 3 / L1 ** 2
             + _iv("0.58", prec) * B2 * L2 / L1 + 2 * B2 / L1)
    return c_Rp * _iv(config.M1, prec) * (b * inner + 18 * L2 ** 2 / L1 ** 2)


def main_inequality_small_t(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Contradiction chain for t0 <= t < t1 with eta(t) = (8 - E/L2)^-1."""
    cert = Certificate("zero-free region chain, t0 <= t < t1")
    c = _common(config, prec)
    s, b, b1, M1, log_t0, log_t1, D = c["s"], c["b"], c["b1"], c["M1"], c["log_t0"], c["log_t1"], c["D"]
    E = _iv(config.E, prec)
    L1_t0, L1_t1 = _L1_from_log(log_t0, D), _L1_from_log(log_t1, D)
    L2_t0, L2_t1 = L1_t0.log(), L1_t1.log()
    eta_t0, eta_t1 = eta_of_L2(L2_t0, E), eta_of_L2(L2_t1, E)
    cert.values.update(eta_t0=eta_t0, eta_t1=eta_t1)
    cert.add(check("eta(t0) (eta decreasing in t)", le(Fraction(1, 2)), eta_t0))
    cert.add(check("eta(t1)", ge(Fraction(2, 7)), eta_t1))
    ratio_L2 = 1 + (D + (-log_t0).exp()).log() / (log_t0 * log_t0.log())
    cert.add(check("L2 / loglog t for t >= t0", le("1.0044"), ratio_L2))
    inv_eta_coef = _ray_max([("8", 1, 1), (-Fraction(config.E) / Fraction("1.0044"), 0, 1)], log_t0, prec)
    cert.add(check("sup (8 log x - E/1.0044)/x, x >= log t0", le("0.06039"), inv_eta_coef))
    Rp = _iv(config.R_prime, prec)
    cert.add(check("0.06039 M1 (admissibility lambda <= eta/(R'+1))", le(1 / (Rp + 1), f"1/{float(Fraction(config.R_prime) + 1):g}"),
                   _iv("0.06039", prec) * M1))
    cRp = c_of_R(config.R_prime, s)
    cert.add(check(f"c(R'), R'={config.R_prime}", le("1.0288"), cRp))

    zero_term = _iv("0.087", prec) * pi(prec) ** 2 * b1 * M1 * _iv("0.06039", prec) ** 2
    cert.add(check("coefficient of L1/L2 from 0.087 pi^2 b1 (1-beta)/eta^2", le("0.00015"), zero_term))
    zeta_one = euler_gamma(prec) / 2 - _iv(Fraction(2, 7), prec).log() / (2 * _iv(Fraction(2, 7), prec))
    cert.add(check("gamma/2 - log(eta)/(2 eta) at eta = 2/7 (its maximum)", le("2.481"), zeta_one))

    half_b = b / 2
    coef_main = half_b * E / 18
    cert.add(check("(b/2)(E/18)", le("3.07346"), coef_main))
    a2 = 4 * b
    a1 = -half_b * (E + _iv("5.779", prec) - 8 * _iv("1.847", prec)) + _iv("2.481", prec)
    a0 = -half_b * _iv("1.847", prec) * E
    cert.add(check("coefficient of L2^2/L1", le("14.298"), a2))
    cert.add(check("coefficient of L2/L1", le("-36.761"), a1))
    cert.add(check("coefficient of 1/L1", le("-102.18"), a0))
    slack = [Fraction(4, 1000) + (_iv("1.659", prec) * E + E * _iv(config.poly.log_weight, prec) / 18 - _iv("1.847", prec) * E) / L2
             for L2 in (L2_t0, L2_t1)]
    cert.add(check("relaxation 1.659/eta - 4.279 - (E/18) 3.377/L2 <= 1.847/eta - 5.779 on [t0, t1]", ge(0),
                   DirectedReal.hull(slack)))
    inner_max = _ray_max([("14.298", 2, 1), ("-36.761", 1, 1), ("-102.18", 0, 1)], L1_t0, prec)
    cert.add(check("sup (14.298 log^2 x - 36.761 log x - 102.18)/x, x >= L1(t0)", le("0.52506"), inner_max))
    main = coef_main + inner_max
    cert.add(check("main term coefficient", le("3.59852"), main))

    B2 = _ray_max([("34", 2, 1), (-8 * Fraction(config.E), 1, 1), (Fraction(config.E) ** 2 / 2, 0, 1)], L1_t0, prec)
    cert.add(check("B2 = sup (34 log^2 x - 8E log x + E^2/2)/x, x >= L1(t0)", le("0.61184"), B2))
    cert.add(check("0.891 >= 0.5576 + 1/3", ge(_iv("0.5576", prec) + Fraction(1, 3)), _iv("0.891", prec)))
    constant = _iv("5.732", prec) + _iv("1.65", prec)
    cert.add(check("(5.732 + 1.65 - 3.377*0.891) b + 1.8", lt(18), (constant - _iv("3.377", prec) * _iv("0.891", prec)) * b + Fraction(18, 10)))
    cert.add(check("3.898 - 3.377*0.6079", lt(2), _iv("3.898", prec) - _iv("3.377", prec) * _iv("0.6079", prec)))
    cert.add(check("log L1(t0) >= 2 (terms of B3 decrease)", ge(2), L1_t0.log()))
    B3 = B3_of_log_t(log_t0, B2, cRp, config, prec)
    cert.add(check("B3(t0)", le("0.09245"), B3))

    C12 = _iv(Fraction(1, 10 ** 100), prec) * (1 + (D + (-log_t0).exp()).log() / log_t0) + (D + (-log_t0).exp()).log()
    numerator = _iv("0.17996", prec) - _iv("0.20523", prec) * C12 / log_t0
    ratio = numerator / (zero_term + main + B3)
    cert.add(check("final ratio (t0 <= t < t1)", ge("0.0475"), ratio))
    cert.add(check("final ratio exceeds M1", gt(M1), ratio))
    cert.values.update(eta_coefficient=inv_eta_coef, c_Rp=cRp, zero_term=zero_term, main=main, B2=B2, B3=B3, ratio=ratio)
    return finish(cert, strict)


def below_t0_certificate(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Zeros just below t0 are excluded by the Ford-type region."""
    cert = Certificate("Ford-type region at t0 - 1")
    log_t0 = _iv(config.log_t0, prec)
    log_below = log_t0 + (1 - (-log_t0).exp()).log()
    ford = default_regions()["ford"]
    width = ford.width(log_below, prec)
    target = _iv(config.M1, prec) * log_t0.log() / log_t0
    cert.add(check("Ford-type width at t0 - 1 < M1 loglog t0/log t0", lt(target, f"{float(target.lo):.8f}"), width))
    return finish(cert, strict)


# lemma rederivations ------------------------------------------------------------------------------


def lemma_certificate(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Recompute the displayed constants of the zero-count and zero-sum lemmas
    and of the convexity bound from their assembly formulas."""
    cert = Certificate("zero-sum lemma constants")
    gamma = euler_gamma(prec)
    two_pi = 2 * pi(prec)
    A, B = _iv(config.A_fr, prec), _iv(config.B_fr, prec)

    # zero counting near 1 + it
    eta_max = _iv(Fraction(2, 7), prec)
    offset = _iv("3.1421", prec) * gamma * eta_max - _iv("3.1421", prec).log()
    cert.add(check("max over eta <= 2/7 of 3.1421 gamma eta - log 3.1421 (increasing)", le("-0.6267"), offset))
    cert.add(check("5*0.3758 - 1.879 (exact)", le(0), _iv(5 * Fraction("0.3758") - Fraction("1.879"), prec)))
    cert.add(check("(1.8579)^(3/2) B / 1.879", le("5.9975"), _iv("1.8579", prec) ** _iv(Fraction(3, 2), prec) * B / _iv("1.879", prec)))
    constant = 1 / (_iv("0.3758", prec) * _iv("0.6421", prec)) + (A.log() - _iv("0.6267", prec)) / _iv("1.879", prec)
    cert.add(check("1/(0.3758*0.6421) + (log A - 0.6267)/1.879", le("6.12"), constant))

    # far-zero sums, small eta
    t0 = _iv(config.lemma_t0, prec)
    d = _iv(config.delta_small, prec)
    eta0 = _iv(config.eta0, prec)
    nu0 = nu_of_eta(eta0, prec)
    A_const = (_iv("0.44", prec) / d ** 2 + (2 / d + 1 / t0) / two_pi + nu0 * (d / pi(prec) + _iv("0.22", prec))
               - _iv("23.99", prec) / eta0.sqrt())
    B_const = _iv("1.16", prec) / d ** 2 + _iv("0.58", prec) * nu0 - _iv("0.3548", prec) / eta0 ** 2
    C_const = (_iv("9.222", prec) / d ** 2 + (1 + d / t0) / (two_pi * t0) - d.log() / t0 - two_pi.log() / (pi(prec) * d)
               + nu0 * (d / pi(prec) * (d / t0 - two_pi.log()) + _iv("4.61", prec))
               - _iv("5.86", prec) / eta0 ** 2 + eta0.log() / (eta0 ** 2 * _iv("1.879", prec)) + _iv("0.00014", prec))
    cert.add(check("small eta: constant part of log t coefficient", le("-40.385"), A_const))
    cert.add(check("small eta: constant part of loglog t coefficient", le("1.2031"), B_const))
    cert.add(check("small eta: constant term", le("-40.236"), C_const))
    cert.add(check("4*5.9975 - 23.99 (exact)", le(0), _iv(4 * Fraction("5.9975") - Fraction("23.99"), prec)))
    cert.add(check("(2/3)/1.879", le("0.3548"), Fraction(2, 3) / _iv("1.879", prec)))
    cert.add(check("6.12 - 1/(2*1.879)", le("5.86"), _iv("6.12", prec) - 1 / (2 * _iv("1.879", prec))))
    cert.add(check("delta <= 1 and delta >= eta0", ge(eta0), d))

    # far-zero sums, large eta
    d = _iv(config.delta_large, prec)
    A_c = _iv("0.44", prec) / d ** 2 + (2 / d + 1 / t0) / two_pi
    A_nu = d / pi(prec) + _iv("0.22", prec)
    B_c = _iv("1.16", prec) / d ** 2
    C_c = _iv("9.222", prec) / d ** 2 + (1 + d / t0) / (two_pi * t0) - d.log() / t0 - two_pi.log() / (pi(prec) * d) + _iv("0.00014", prec)
    C_nu = d / pi(prec) * (d / t0 - two_pi.log()) + _iv("4.61", prec)
    cert.add(check("large eta: log t constant", le("0.5576"), A_c))
    cert.add(check("large eta: log t nu-coefficient", le("0.6079"), A_nu))
    cert.add(check("large eta: loglog t constant", le("0.7813"), B_c))
    cert.add(check("large eta: constant term", le("5.732"), C_c))
    cert.add(check("large eta: constant nu-coefficient", le("3.898"), C_nu))

    # convexity interpolation
    log_sum, log_C2 = convexity_constants(prec)
    cert.add(check("convexity: log C1 + log C2", le("1.659"), log_sum))
    cert.add(check("convexity: log C2", ge("4.279"), log_C2))

    # integral lemma error terms at the worst corner (t0 = 100, t = 3 t0, a = 1/2)
    u = _iv(600, prec)
    cert.add(check("2 u^2 log(u) e^-u at u = t/a = 600", lt(1), 2 * u ** 2 * u.log() * (-u).exp()))
    cert.add(check("8 t0 log(4 t0 + 1) e^(-2 t0) at t0 = 100", lt(1), 800 * _iv(401, prec).log() * _iv(-200, prec).exp()))
    cert.add(check("-pi^2/12 + 600 e^-2400 + 1e-100", lt(Fraction(-1, 2)),
                   -pi(prec) ** 2 / 12 + 600 * _iv(-2400, prec).exp() + _iv(Fraction(1, 10 ** 100), prec)))
    tail = _iv(40, prec) / 3 * (_iv(-800, prec).exp() * (_iv(400, prec) ** 3 / 2 + 3 * _iv(400, prec) ** 2 / 4 + 3 * _iv(400, prec) / 4 + Fraction(3, 8)))
    cert.add(check("(40/3) int_400^inf u^3 e^-2u du", lt(Fraction(1, 10 ** 100)), tail))
    return finish(cert, strict)


def smoothing_certificate(config: ZfrConfig = DEFAULT_CONFIG, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    cert = Certificate("smoothing constants")
    s = smoothing_constants(config.poly, prec)
    ratio = Fraction(config.poly.b1) / Fraction(config.poly.b0)
    changes = theta_sign_changes(ratio, prec, cells=400)
    cert.add(check("theta", digits("1.132693699"), s.theta))
    cert.add(check("sign changes of the theta equation on (0, pi/2)", within("1", "1"), _iv(changes, prec)))
    cert.add(check("g(0)", digits("5.610921922"), s.g0))
    cert.add(check("G'(0)", ge("-0.659108"), s.gprime0))
    cert.add(check("c0", digits("14.464"), s.c0))
    cert.add(check("c1", digits("15.541"), s.c1))
    cert.add(check("c2", digits("7.9763"), s.c2))
    cert.add(check("c3", digits("3.4108"), s.c3))
    for R, ceiling in ((DEFAULT_CONFIG.R, "1.02268"), (DEFAULT_CONFIG.R_prime, "1.0288")):
        cert.add(check(f"c(R) at R={R}", le(ceiling), c_of_R(R, s)))
    return finish(cert, strict)


# region comparison --------------------------------------------------------------------------------

FORMULAS = {
    "classical": 1,
    "ford": 6,
    "vk": 1,
    "littlewood": 1,
}


@dataclass(frozen=True)
class RegionSpec:
    """A zero-free region sigma > 1 - width(t), valid for t >= valid_from."""

    name: str
    formula: str
    params: tuple
    valid_from: str = "3"

    def __post_init__(self):
        if self.formula not in FORMULAS:
            raise DomainViolation(f"unknown region formula {self.formula!r}")
        if len(self.params) != FORMULAS[self.formula]:
            raise DomainViolation(f"{self.formula} takes {FORMULAS[self.formula]} parameters, got {len(self.params)}")

    def log_valid_from(self, prec: int) -> DirectedReal:
        return _iv(self.valid_from, prec).log()

    def width(self, log_t, prec: int = DEFAULT_PRECISION) -> DirectedReal:
        u = _iv(log_t, prec)
        if u.lo < self.log_valid_from(prec).lo:
            raise DomainViolation(f"{self.name} is valid only for t >= {self.valid_from}")
        p = [_iv(v, prec) for v in self.params]
        if self.formula == "classical":
            return 1 / (p[0] * u)
        if self.formula == "littlewood":
            return u.log() / (p[0] * u)
        if self.formula == "vk":
            return 1 / (p[0] * u ** _iv(Fraction(2, 3), prec) * u.log() ** _iv(Fraction(1, 3), prec))
        a, b, c, d, e, j = p
        J = u / 6 + u.log() + j.log()
        return (a - b / (J + c)) / (J + d + e * u.log())


def default_regions() -> dict:
    return {
        "classical": RegionSpec("classical", "classical", ("5.558691",), "2"),
        "ford": RegionSpec("ford", "ford", ("0.04962", "0.0196", "1.15", "0.685", "0.155", "0.618"), "3"),
        "vk": RegionSpec("vk", "vk", ("55.241",), "3"),
        "new": RegionSpec("new", "littlewood", ("21.233",), "3"),
    }


def region_width(region: RegionSpec, t=None, prec: int = DEFAULT_PRECISION, log_t=None) -> DirectedReal:
    return region.width(_log_t(t, log_t, prec), prec)


def _geometric(lo: Fraction, hi: Fraction, count: int) -> list:
    ratio = (float(hi) / float(lo)) ** (1 / count)
    points = [lo]
    for i in range(1, count):
        points.append(Fraction(float(lo) * ratio ** i).limit_denominator(10 ** 6))
    points.append(hi)
    return sorted(set(points))


def crossovers(a: RegionSpec, b: RegionSpec, log_lo, log_hi, prec: int = DEFAULT_PRECISION, samples: int = 400) -> list:
    """Certified enclosures (in log t) of the sign changes of width_a - width_b."""
    lo, hi = Fraction(log_lo), Fraction(log_hi)

    def diff(u):
        return a.width(u, prec) - b.width(u, prec)

    def sign(u):
        value = diff(_iv(u, prec))
        return 1 if value.lo > 0 else -1 if value.hi < 0 else 0

    points = _geometric(lo, hi, samples)
    signs = [(p, sign(p)) for p in points]
    known = [(p, s) for p, s in signs if s != 0]
    roots = []
    for (p, sp), (q, sq) in zip(known, known[1:]):
        if sp != sq:
            try:
                roots.append(bisect_root(diff, p, q, prec, rel_tol=Fraction(1, 2 ** 80)))
            except BracketError:
                continue
    return roots


def best_region(regions, log_t, prec: int = DEFAULT_PRECISION):
    """Name of the certified widest region at log t (or None when not separated), plus all widths."""
    widths = {}
    for region in regions:
        try:
            widths[region.name] = region.width(log_t, prec)
        except DomainViolation:
            continue
    best = None
    for name, value in widths.items():
        if all(name == other or value.lo > w.hi for other, w in widths.items()):
            best = name
    return best, widths
