"""Certified bounds for |zeta(sigma_k + it)| of the form gamma_k t^(1/(2K-2)) log t.

Large heights are handled by the partial-sum decomposition with constants
alpha_k (short initial range), beta_k (the dyadic blocks bounded by the
derivative tests) and an Euler-Maclaurin tail.  Small heights use
Phragmen-Lindelof convexity between the half line and the one line.

Heights can be astronomically large (T_60 is about exp(10^16)), so all
functions that depend on t accept ``log_t`` and never form t itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import CapExceeded, DomainViolation
from .expsum import UNIFORM_ETA3, kth_derivative_constants
from .numerics import DEFAULT_PRECISION, DirectedReal, e_const, nearest, pi
from .report import Certificate, check, finish, ge, le, lt

ZETA_CAP = 10 ** 8
GAMMA_CEILING = "1.546"


def _iv(value, prec: int) -> DirectedReal:
    return DirectedReal.exact(value, prec)


def big_K(k: int) -> int:
    return 2 ** (k - 1)


def theta(r: int) -> Fraction:
    R = big_K(r)
    return Fraction(R, r * R - 2 * R + 2)


@dataclass(frozen=True)
class SigmaLine:
    k: int
    K: int
    sigma: Fraction
    eta: Fraction
    log_T: Fraction

    @property
    def exponent(self) -> Fraction:
        return Fraction(1, 2 * self.K - 2)

    def T(self, prec: int = DEFAULT_PRECISION) -> DirectedReal:
        return _iv(self.log_T, prec).exp()


def sigma_line(k: int) -> SigmaLine:
    if k < 4:
        raise DomainViolation("sigma lines are defined for k >= 4")
    K = big_K(k)
    eta = Fraction(k, 2 ** k - 2)
    log_T = (Fraction("2.6134") * (K - 1) + Fraction("2.8876") * k) / (k - 3)
    return SigmaLine(k, K, 1 - eta, eta, log_T)


def theorem1_bound(k: int, t, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """1.546 t^(1/(2^k - 2)) log t."""
    tt = _iv(t, prec)
    if tt.lo < 3 and not tt.contains(math.e) and tt.hi < 3:
        raise DomainViolation("the bound is stated for t >= 3")
    exponent = _iv(Fraction(1, 2 ** k - 2), prec)
    return _iv(GAMMA_CEILING, prec) * tt ** exponent * tt.log()


# Euler-Maclaurin tail ------------------------------------------------------------


def em_tail_bound(h, sigma, t0=None, prec: int = DEFAULT_PRECISION, log_t0=None) -> DirectedReal:
    """Bound on |zeta(s) - sum_{n <= h t} n^-s| for t >= t0, divided form included.

    (h + 1/2 + 3 sqrt(1 + t0^-2) (1 - cot(1/(2h))/(2h))) / (h t0)^sigma
    """
    hh, ss = _iv(h, prec), _iv(sigma, prec)
    if hh.lo <= (1 / (2 * pi(prec))).hi:
        raise DomainViolation("h must exceed 1/(2 pi)")
    if log_t0 is None:
        log_t0 = _iv(t0, prec).log()
    else:
        log_t0 = _iv(log_t0, prec)
    inv_t0_sq = (-2 * log_t0).exp()
    half_inv = 1 / (2 * hh)
    bracket = hh + Fraction(1, 2) + 3 * (1 + inv_t0_sq).sqrt() * (1 - half_inv * half_inv.cot())
    return bracket * (-(ss * (hh.log() + log_t0))).exp()


# C_r, D_r and the alpha / beta constants ----------------------------------------------


def _param(value, prec: int) -> DirectedReal:
    if isinstance(value, str) and value.strip() == "e":
        return e_const(prec)
    return _iv(value, prec)


def cd_constants(r: int, eta3, h, prec: int = DEFAULT_PRECISION):
    """(C_r(eta3, h), D_r(eta3, h)) built from A_r(eta3, h^r) and B_r(eta3)."""
    if r < 2:
        raise DomainViolation("r must be at least 2")
    hh = _param(h, prec)
    if hh.lo <= 1:
        raise DomainViolation("h must exceed 1")
    R = big_K(r)
    constants = kth_derivative_constants(r, eta3, hh ** r, prec)
    log_fact = _iv(math.factorial(r - 1), prec).log() - (2 * pi(prec)).log()
    C = constants.A * hh ** _iv(Fraction(2 * r, R) - Fraction(r, 2 * R - 2), prec) * (hh - 1) \
        * (log_fact * Fraction(1, 2 * R - 2)).exp()
    D = constants.B * hh ** _iv(Fraction(r, 2 * R - 2), prec) * (hh - 1) ** _iv(1 - Fraction(2, R), prec) \
        * (-log_fact * Fraction(1, 2 * R - 2)).exp()
    return C, D


def _t_power(log_t: DirectedReal, exponent: Fraction) -> DirectedReal:
    return (log_t * exponent).exp()


def _log_t(t, log_t, prec: int) -> DirectedReal:
    if log_t is not None:
        return _iv(log_t, prec)
    return _iv(t, prec).log()


def phi_range(k: int):
    K = big_K(k)
    return Fraction(1, k * K - 2 * K + 2), Fraction(1, k)


def alpha_k(k: int, h0, h1, eta3, phi, t=None, prec: int = DEFAULT_PRECISION, log_t=None, cd=None) -> DirectedReal:
    lo, hi = phi_range(k)
    phi = Fraction(phi)
    if not lo <= phi <= hi:
        raise DomainViolation(f"phi = {phi} outside [{lo}, {hi}]")
    K = big_K(k)
    L = _log_t(t, log_t, prec)
    if L.lo <= 0:
        raise DomainViolation("need t > 1")
    hh0, hh1 = _param(h0, prec), _param(h1, prec)
    if hh1.lo <= 1:
        raise DomainViolation("h1 must exceed 1")
    log_h1 = hh1.log()
    C, D = cd if cd is not None else cd_constants(k, eta3, hh1, prec)
    term1 = Fraction(2 * K - 2, k) / (_t_power(L, (1 - phi * k) / (2 * K - 2)) * L)
    term2 = (1 - Fraction(2 * K - 2, k)) / (_t_power(L, Fraction(1, 2 * K - 2)) * L)
    front = (theta(k) - phi) / log_h1 + ((hh0 * hh1).log() / log_h1).max(0) / L
    term3 = front * (C + D * hh1 ** _iv(Fraction(2, K) - Fraction(k, K - 1), prec))
    d = hh1 ** _iv(1 - Fraction(k, 2 * K - 2), prec)
    term4 = d / (d - 1) * hh0 ** _iv(Fraction(k, 2 * K - 2) - 1, prec) \
        * _t_power(L, Fraction(1, k * K - 2 * K + 2) - phi) / L
    return term1 + term2 + term3 + term4


def F_k(k: int, r: int, h0, h2, h3, eta3, t=None, prec: int = DEFAULT_PRECISION, log_t=None, cd=None) -> DirectedReal:
    if not 2 <= r < k:
        raise DomainViolation("need 2 <= r < k")
    K, R = big_K(k), big_K(r)
    L = _log_t(t, log_t, prec)
    hh0, hh2, hh3 = _param(h0, prec), _param(h2, prec), _param(h3, prec)
    if hh3.lo <= 1 or hh2.lo <= 0:
        raise DomainViolation("need h3 > 1 and h2 > 0")
    C, D = cd if cd is not None else cd_constants(r, eta3, hh3, prec)
    th = theta(r)
    H = hh0 * hh2 ** _iv(Fraction(k - r, k - 2), prec) / hh3
    front = (th - theta(r + 1)) / hh3.log() - hh2.log() / ((k - 2) * L) + 1 / L
    kappa = Fraction(k, 2 * K - 2)
    inner = (C * H ** _iv(kappa - Fraction(r, 2 * R - 2), prec)
             + D * H ** _iv(kappa - Fraction(2, R) + Fraction(r, 2 * R - 2), prec)) * _t_power(L, -th / R)
    ceiling = _ceiling_upper(hh3)
    inner = inner + ceiling * (hh3 * H) ** _iv(kappa - 1, prec) * _t_power(L, -th)
    return front * _t_power(L, (th * k - 1) / (2 * K - 2)) * inner


def _ceiling_upper(x: DirectedReal) -> int:
    # when the enclosure straddles an integer the larger candidate is kept
    return int(math.ceil(x.hi))


def beta_k(k: int, h0, h2, h3, eta3, t=None, prec: int = DEFAULT_PRECISION, log_t=None, cd_table=None) -> DirectedReal:
    total = _iv(0, prec)
    hh3 = _param(h3, prec)
    for r in range(2, k):
        cd = cd_table[r] if cd_table is not None else cd_constants(r, eta3, hh3, prec)
        total = total + F_k(k, r, h0, h2, hh3, eta3, t, prec, log_t, cd)
    return total


# tabulated gamma_k rows and certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Table2Row:
    k: int
    eta3: str
    h0: str
    h1: str
    h2: str
    h3: str
    gamma: str
    alpha: str | None = None
    beta: str | None = None
    phi: Fraction | None = None

    def phi_value(self) -> Fraction:
        return self.phi if self.phi is not None else Fraction(1, self.k)


TABLE2 = (
    Table2Row(4, "1.22626", "0.03640", "1.30262", "4.37500", "1.30021", "1.546", "1.1796", "0.3655"),
    Table2Row(5, "1.43074", "0.10750", "1.17205", "17.2191", "1.28297", "1.366", "0.7253", "0.6401"),
    Table2Row(6, "1.79198", "0.40548", "1.08095", "25.8377", "1.19628", "1.122", "0.4944", "0.6267"),
    Table2Row(7, "1.95195", "0.97083", "1.02940", "6.87426", "1.09787", "0.899", "0.3634", "0.5350"),
    Table2Row(8, "1.94390", "0.98846", "1.01101", "5.00587", "1.05355", "0.723", "0.2824", "0.4405"),
    Table2Row(9, "1.85285", "0.99604", "1.00392", "3.80684", "1.02923", "0.594", "0.2285", "0.3652"),
)

ROW_TOLERANCE = Fraction(1, 10 ** 4)


def g_term(k: int, h0h2, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """G(h0 h2, sigma_k) / (T_k^(1/(2K-2)) log T_k) with t0 = T_k."""
    line = sigma_line(k)
    log_T = _iv(line.log_T, prec)
    G = em_tail_bound(h0h2, line.sigma, prec=prec, log_t0=log_T)
    return G / (_t_power(log_T, line.exponent) * log_T)


def gamma_certificate(k: int, row: Table2Row | None = None, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """alpha_k + beta_k + G-term <= gamma_k at t0 = T_k for one tabulated row."""
    if row is None:
        if k >= 10:
            return large_k_certificate(prec=prec, strict=strict)
        row = {r.k: r for r in TABLE2}[k]
    if row.k != k:
        raise DomainViolation("row order does not match k")
    cert = Certificate(f"gamma certificate k={k}")
    line = sigma_line(k)
    log_T = _iv(line.log_T, prec)
    h0h2 = _param(row.h0, prec) * _param(row.h2, prec)
    alpha = alpha_k(k, row.h0, row.h1, row.eta3, row.phi_value(), prec=prec, log_t=log_T)
    beta = beta_k(k, row.h0, row.h2, row.h3, row.eta3, prec=prec, log_t=log_T)
    tail = g_term(k, h0h2, prec)
    total = alpha + beta + tail
    cert.values.update(alpha=alpha, beta=beta, G_term=tail, total=total, log_T=log_T, h0h2=h0h2)
    if row.alpha is not None:
        cert.add(check(f"k={k} alpha_k(T_k)", le(Fraction(row.alpha) + ROW_TOLERANCE, f"{row.alpha} + 1e-4"), alpha))
    if row.beta is not None:
        cert.add(check(f"k={k} beta_k(T_k)", le(Fraction(row.beta) + ROW_TOLERANCE, f"{row.beta} + 1e-4"), beta))
    cert.add(check(f"k={k} h0*h2 > 1/(2 pi)", ge(1 / (2 * pi(prec))), h0h2))
    cert.add(check(f"k={k} alpha + beta + G-term", le(row.gamma), total))
    return finish(cert, strict)


# k >= 10 -------------------------------------------------------------------------------

LARGE_K_ETA3 = UNIFORM_ETA3


@lru_cache(maxsize=8)
def _large_k_cd(r_max: int, prec: int):
    e = e_const(prec)
    return {r: cd_constants(r, LARGE_K_ETA3, e, prec) for r in range(2, r_max + 1)}


def large_k_terms(k: int, prec: int = DEFAULT_PRECISION) -> dict:
    """alpha_k, beta_k, G-term at t = T_k with h0 = h1 = h3 = e, h2 = 1, phi = 1/k."""
    line = sigma_line(k)
    log_T = _iv(line.log_T, prec)
    cd = _large_k_cd(max(k, 60), prec)
    alpha = alpha_k(k, "e", "e", LARGE_K_ETA3, Fraction(1, k), prec=prec, log_t=log_T, cd=cd[k])
    beta = beta_k(k, "e", 1, "e", LARGE_K_ETA3, prec=prec, log_t=log_T, cd_table=cd)
    tail = g_term(k, e_const(prec), prec)
    return {"alpha": alpha, "beta": beta, "G_term": tail, "total": alpha + beta + tail}


def _large_k_tail(k0: int, prec: int) -> dict:
    """Rigorous bounds valid for every k > k0 (k0 >= 20).

    Uses monotonicity in k of each ingredient and the subadditivity of
    beta_k in k, starting from the directly computed beta_{k0}(T_{k0}).
    """
    e = e_const(prec)
    R0 = big_K(k0)
    # A_r(eta3, e^r) <= A_r(eta3, 3) <= x* < 2.762 and B_r <= 1.02 for r >= 10
    a_bar, b_bar = _iv("2.762", prec), _iv("1.02", prec)
    growth = (_iv(Fraction(2 * k0, R0), prec) + _iv(k0, prec) * _iv(k0, prec).log() / (2 * R0 - 2)).exp()
    C_sup = a_bar * (e - 1) * growth
    D_sup = b_bar * (e - 1) * (_iv(Fraction(k0, 2 * R0 - 2), prec) + (2 * pi(prec)).log() / (2 * R0 - 2)).exp()
    ceil_group = 3 * (_iv(Fraction(k0 + 1, 2 * big_K(k0 + 1) - 2), prec) - 1).exp()
    # (k - k0)/log T_k <= k^2 / 2^(k-1), which decreases for k >= 3
    k1 = k0 + 1
    ratio_sup = _iv(Fraction(k1 * k1, big_K(k1)), prec)
    inv_log_T = 1 / _iv(sigma_line(k1).log_T, prec)
    base = large_k_terms(k0, prec)
    beta_sup = base["beta"] + (_iv(theta(k0), prec) + ratio_sup) * (ceil_group + C_sup + D_sup)
    x = (1 - _iv(Fraction(k1, 2 * big_K(k1) - 2), prec)).exp()
    alpha_sup = _iv(Fraction(1, k1), prec) + inv_log_T \
        + (_iv(Fraction(2, k1 * (k1 - 2)), prec) + 2 * inv_log_T) * (C_sup + D_sup) \
        + inv_log_T * x / (x - 1)
    g_sup = em_tail_bound(e, sigma_line(10).sigma, prec=prec, log_t0=sigma_line(10).log_T) * inv_log_T
    return {"alpha": alpha_sup, "beta": beta_sup, "G_term": g_sup, "total": alpha_sup + beta_sup + g_sup,
            "C_sup": C_sup, "D_sup": D_sup}


def large_k_suprema(k_direct: int = 60, prec: int = DEFAULT_PRECISION) -> dict:
    """Certified suprema over all k >= 10 of alpha_k, beta_k, alpha+beta and the final constant."""
    sup = {}
    per_k = {}
    for k in range(10, k_direct + 1):
        terms = large_k_terms(k, prec)
        per_k[k] = terms
        combined = terms["alpha"] + terms["beta"]
        for key, value in (("alpha", terms["alpha"]), ("beta", terms["beta"]), ("combined", combined), ("final", terms["total"])):
            sup[key] = value if key not in sup else sup[key].max(value)
    tail = _large_k_tail(k_direct, prec)
    for key, value in (("alpha", tail["alpha"]), ("beta", tail["beta"]),
                       ("combined", tail["alpha"] + tail["beta"]), ("final", tail["total"])):
        sup[key] = sup[key].max(value)
    return {"sup": sup, "per_k": per_k, "tail": tail}


def large_k_certificate(k_direct: int = 60, prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """The k >= 10 branch.

    Two groups of items are produced.  The "chain" items check each
    published intermediate constant as stated.  The "sup" items certify the
    actual suprema over k >= 10 of alpha_k(T_k), beta_k(T_k), their sum and
    the final constant against the published 0.252, 1.2235, 1.476 and 1.546.
    """
    cert = Certificate("gamma certificate k>=10")
    e = e_const(prec)
    result = large_k_suprema(k_direct, prec)
    sup, per_k = result["sup"], result["per_k"]
    cd = _large_k_cd(max(k_direct, 60), prec)

    # chain as published
    groups = [3 * (_iv(Fraction(k, 2 * big_K(k) - 2), prec) - 1).exp() for k in range(10, k_direct + 1)]
    cert.add(check("chain: ceil(h3) h0^(k/(2K-2)-1), k>=10", le("1.115"), DirectedReal.hull(groups)))
    fronts = [_iv(theta(10) - theta(k), prec) + (k - 10) / _iv(sigma_line(k).log_T, prec) for k in range(11, k_direct + 1)]
    cert.add(check("chain: sum_{r=10}^{k-1} front factors at T_k", le("0.12494"), DirectedReal.hull(fronts)))
    C_hull = DirectedReal.hull([cd[r][0] for r in range(10, k_direct + 1)])
    D_hull = DirectedReal.hull([cd[r][1] for r in range(10, k_direct + 1)])
    cert.add(check("chain: C_r(eta3, e), r>=10", le("2.804"), C_hull))
    cert.add(check("chain: D_r(eta3, e), r>=10", le("1.02"), D_hull))
    cert.values.update(C_r_max=C_hull, D_r_max=D_hull)
    cert.add(check("chain: 0.12494 (1.115 + 2.804 + 1.02)", le("0.6171"),
                   _iv("0.12494", prec) * (_iv("1.115", prec) + _iv("2.804", prec) + _iv("1.02", prec))))
    cert.add(check("chain: 0.12494 (1.115 + C_r + D_r) with computed C_r, D_r", le("0.6171"),
                   _iv("0.12494", prec) * (_iv("1.115", prec) + C_hull + D_hull)))
    cert.add(check("chain: beta_10(T_10)", le("0.6064"), per_k[10]["beta"]))
    first = [Fraction(1, 10) + 1 / (_t_power(_iv(sigma_line(k).log_T, prec), sigma_line(k).exponent) * _iv(sigma_line(k).log_T, prec))
             for k in range(10, k_direct + 1)]
    cert.add(check("chain: alpha first two terms", le("0.105"), DirectedReal.hull(first)))
    second = [_iv(Fraction(2, k * (k - 2)), prec) + 2 / _iv(sigma_line(k).log_T, prec) for k in range(10, k_direct + 1)]
    cert.add(check("chain: 2/(k(k-2)) + 2/log T_k", le("0.036"), DirectedReal.hull(second)))
    third_terms = []
    for k in range(10, k_direct + 1):
        K = big_K(k)
        front = _iv(theta(k) - Fraction(1, k), prec) + 2 / _iv(sigma_line(k).log_T, prec)
        third_terms.append(front * (cd[k][0] + cd[k][1] * e ** _iv(Fraction(2, K) - Fraction(k, K - 1), prec)))
    cert.add(check("chain: alpha third term with computed C_k, D_k", le("0.138"), DirectedReal.hull(third_terms)))
    last = [_iv(Fraction(1), prec) / _iv(sigma_line(k).log_T, prec) * _iv("2.691", prec) / _iv("1.691", prec) for k in range(10, k_direct + 1)]
    cert.add(check("chain: alpha last term", le("0.009"), DirectedReal.hull(last)))
    cert.add(check("chain: h1^(1-k/(2K-2)) at k=10", ge("2.691"), (1 - _iv(Fraction(10, 1022), prec)).exp()))
    cert.add(check("chain: G(e, sigma_10) at T_10", le("0.001"),
                   em_tail_bound(e, sigma_line(10).sigma, prec=prec, log_t0=sigma_line(10).log_T)))

    # certified suprema over all k >= 10
    cert.add(check("sup_k alpha_k(T_k), k>=10", le("0.252"), sup["alpha"]))
    cert.add(check("sup_k beta_k(T_k), k>=10", le("1.2235"), sup["beta"]))
    cert.add(check("sup_k alpha_k + beta_k, k>=10", le("1.476"), sup["combined"]))
    cert.add(check("sup_k alpha_k + beta_k + G-term, k>=10", lt(GAMMA_CEILING), sup["final"]))
    cert.values.update(sup=sup, per_k=per_k, tail=result["tail"])
    return finish(cert, strict)


# small t ------------------------------------------------------------------------------

Q0 = Fraction("1.31")


def A_of_t0(t0=None, prec: int = DEFAULT_PRECISION, log_t0=None) -> DirectedReal:
    L = _log_t(t0, log_t0, prec)
    ratio = _iv(Fraction("2.31") ** 2, prec) * (-2 * L).exp() + 1
    return ratio ** _iv(Fraction(23, 42), prec) * (1 + ratio.log() / (2 * L))


def log_t1(k: int, A: DirectedReal, prec: int = DEFAULT_PRECISION) -> DirectedReal:
    """log t_1(k) = ((6K-6) log(A/1.546) + 6k log 0.618) / (3 - k)."""
    K = big_K(k)
    value = (6 * K - 6) * (A / _iv(GAMMA_CEILING, prec)).log() + 6 * k * _iv("0.618", prec).log()
    return value / (3 - k)


def small_t_certificate(ks=range(4, 61), prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """Two-stage convexity chain covering 3 <= t <= T_k."""
    if isinstance(ks, int):
        ks = [ks]
    ks = list(ks)
    if min(ks) < 4:
        raise DomainViolation("k must be at least 4")
    cert = Certificate("small-t convexity chain")
    stage_two_log = Fraction("8.7")
    A3 = A_of_t0(3, prec)
    A87 = A_of_t0(prec=prec, log_t0=stage_two_log)
    cert.values.update(A_3=A3, A_exp87=A87)
    cert.add(check("A(3)", le("1.4747"), A3))
    cert.add(check("A(exp(8.7))", le("1.0001"), A87))
    stage1 = [log_t1(k, A3, prec) for k in ks]
    stage2 = [log_t1(k, A87, prec) - _iv(sigma_line(k).log_T, prec) for k in ks]
    worst1 = min(zip(stage1, ks), key=lambda pair: pair[0].lo)
    worst2 = min(zip(stage2, ks), key=lambda pair: pair[0].lo)
    cert.add(check(f"stage 1: min_k log t_1(k) with t0=3 (worst k={worst1[1]})", ge(stage_two_log), worst1[0]))
    cert.add(check(f"stage 2: min_k log t_1(k) - log T_k with t0=exp(8.7) (worst k={worst2[1]})", ge(0), worst2[0]))
    cert.values.update(stage1=dict(zip(ks, stage1)), stage2=dict(zip(ks, stage2)))
    return finish(cert, strict)


# rigorous |zeta| upper bound ----------------------------------------------------------------


def _partial_sum_abs_upper(sigma, t, count: int, work_prec: int):
    """Upper bound for |sum_{n <= count} n^-(sigma + i t)|.

    Terms are evaluated in round-to-nearest MPFR arithmetic; the returned
    bound adds an a-priori bound on the accumulated rounding error, which is
    valid because every MPFR operation is correctly rounded.
    """
    ctx = nearest(work_prec)
    sigma_m = ctx.div(gmpy2.mpz(sigma.numerator), gmpy2.mpz(sigma.denominator))
    t_m = ctx.div(gmpy2.mpz(t.numerator), gmpy2.mpz(t.denominator))
    re = gmpy2.mpfr(0)
    im = gmpy2.mpfr(0)
    log, mul, exp, sin_cos, add, sub = ctx.log, ctx.mul, ctx.exp, ctx.sin_cos, ctx.add, ctx.sub
    for n in range(1, count + 1):
        ln = log(n)
        size = exp(-mul(sigma_m, ln))
        s, c = sin_cos(mul(t_m, ln))
        re = add(re, mul(size, c))
        im = sub(im, mul(size, s))
    value = ctx.sqrt(add(mul(re, re), mul(im, im)))
    slack = Fraction(count * (10 * (2 + int(float(t) * math.log(count + 1)) + 1) + count), 2 ** (work_prec - 1))
    return value, slack


def zeta_abs_upper(sigma, t, h=1, prec: int = DEFAULT_PRECISION, cap: int = ZETA_CAP) -> DirectedReal:
    """Rigorous upper bound on |zeta(sigma + i t)| for 1/2 <= sigma <= 1, t >= 3.

    The returned interval is [0, bound]: partial sum up to h t plus the
    Euler-Maclaurin tail with t0 = t.
    """
    sigma, t, h = Fraction(sigma), Fraction(t), Fraction(h)
    if not Fraction(1, 2) <= sigma <= 1:
        raise DomainViolation("sigma must lie in [1/2, 1]")
    if t < 3:
        raise DomainViolation("t must be at least 3")
    count = math.floor(h * t)
    if count > cap:
        raise CapExceeded(f"{count} terms exceed the cap {cap}")
    value, slack = _partial_sum_abs_upper(sigma, t, count, max(prec // 2, 96))
    tail = em_tail_bound(h, sigma, t, prec)
    upper = _iv(value, prec) + _iv(slack, prec) + tail
    return DirectedReal(0, upper.hi, prec)


# small-|t| premises near the pole, by Euler-Maclaurin in complex interval arithmetic ------------


class ComplexInterval:
    __slots__ = ("re", "im")

    def __init__(self, re: DirectedReal, im: DirectedReal):
        self.re, self.im = re, im

    def __add__(self, other):
        return ComplexInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, ComplexInterval):
            return ComplexInterval(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)
        return ComplexInterval(self.re * other, self.im * other)

    def abs_upper(self):
        return (abs(self.re) ** 2 + abs(self.im) ** 2).sqrt().hi

    def abs_interval(self) -> DirectedReal:
        return (abs(self.re) ** 2 + abs(self.im) ** 2).sqrt()


def _exp_minus(s: ComplexInterval, log_n: DirectedReal) -> ComplexInterval:
    """n^(-s) = exp(-s log n)."""
    size = (-(s.re * log_n)).exp()
    angle = s.im * log_n
    return ComplexInterval(size * angle.cos(), -(size * angle.sin()))


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    values = [Fraction(1)]
    for m in range(1, n + 1):
        values.append(-sum(math.comb(m + 1, j) * values[j] for j in range(m)) / (m + 1))
    return values[n]


def s_minus_one_zeta(s: ComplexInterval, N: int = 10, m: int = 6) -> tuple:
    """Enclosure of (s - 1) zeta(s) by Euler-Maclaurin with Backlund's remainder.

    Returns the main-part enclosure and an upper bound on |(s - 1) R_m|.
    """
    prec = s.re.prec
    one = ComplexInterval(_iv(1, prec), _iv(0, prec))
    s_minus_one = s - one
    total = ComplexInterval(_iv(0, prec), _iv(0, prec))
    for n in range(1, N):
        total = total + _exp_minus(s, _iv(n, prec).log())
    log_N = _iv(N, prec).log()
    N_minus_s = _exp_minus(s, log_N)
    total = total + N_minus_s * Fraction(1, 2)
    rising = s
    power = N_minus_s * Fraction(1, N)
    for j in range(1, m + 1):
        total = total + rising * power * bernoulli(2 * j) * Fraction(1, math.factorial(2 * j))
        rising = rising * (s + ComplexInterval(_iv(2 * j - 1, prec), _iv(0, prec))) * (s + ComplexInterval(_iv(2 * j, prec), _iv(0, prec)))
        power = power * Fraction(1, N * N)
    omitted = rising * power * bernoulli(2 * m + 2) * Fraction(1, math.factorial(2 * m + 2))
    factor = (s + ComplexInterval(_iv(2 * m + 1, prec), _iv(0, prec))).abs_interval() / (s.re + 2 * m + 1)
    remainder = omitted.abs_interval() * factor * s_minus_one.abs_interval()
    main = total * s_minus_one + _exp_minus(s - one, log_N)
    return main, remainder.hi


def premise_certificate(prec: int = DEFAULT_PRECISION, cells: int = 600, strict: bool = True) -> Certificate:
    """Checks sup_{|t| <= 3} |(s-1) zeta(s)| against the convexity envelopes on
    sigma = 1/2, 5/7 and 1.  By conjugate symmetry only t in [0, 3] is scanned;
    failing cells are bisected adaptively.
    """
    cert = Certificate("convexity premises for |t| <= 3")
    cases = (
        (Fraction(1, 2), Fraction("0.618"), Fraction(7, 6), "sigma=1/2: |(s-1)zeta(s)| < 0.618|1.31+s|^(7/6) log|1.31+s|"),
        (Fraction(1), Fraction(1), Fraction(1), "sigma=1: |(s-1)zeta(s)| < |1.31+s| log|1.31+s|"),
        (Fraction(5, 7), Fraction("1.546"), Fraction(15, 14), "sigma=5/7: |(s-1)zeta(s)| < 1.546|1.31+s|^(15/14) log|1.31+s|"),
    )
    for sigma, coefficient, power, label in cases:
        worst_ratio = None
        stack = [(Fraction(3 * i, cells), Fraction(3 * (i + 1), cells)) for i in range(cells)]
        failed = False
        while stack:
            a, b = stack.pop()
            t_cell = DirectedReal(_iv(a, prec).lo, _iv(b, prec).hi, prec)
            s = ComplexInterval(_iv(sigma, prec), t_cell)
            main, remainder = s_minus_one_zeta(s)
            lhs = DirectedReal(0, main.abs_upper() + remainder, prec)
            modulus = ((_iv(Q0 + sigma, prec)) ** 2 + t_cell ** 2).sqrt()
            rhs = _iv(coefficient, prec) * modulus ** _iv(power, prec) * modulus.log()
            ratio = lhs / rhs
            if ratio.hi < 1:
                worst_ratio = ratio if worst_ratio is None else worst_ratio.max(ratio)
                continue
            if b - a < Fraction(1, 10 ** 9):
                failed = True
                worst_ratio = ratio if worst_ratio is None else worst_ratio.max(ratio)
                break
            midpoint = (a + b) / 2
            stack.extend([(a, midpoint), (midpoint, b)])
        value = worst_ratio if worst_ratio is not None else _iv(0, prec)
        cert.add(check(label + " (max ratio)", lt(1), value))
        if failed:
            cert.items[-1] = cert.items[-1].__class__(cert.items[-1].name, cert.items[-1].target, value, False, "cell refinement exhausted")
    return finish(cert, strict)


def spot_checks(k: int = 4, t_values=(10, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6), h=1,
                prec: int = DEFAULT_PRECISION, strict: bool = True) -> Certificate:
    """zeta_abs_upper(sigma_k, t) <= 1.546 t^(1/(2K-2)) log t on a grid of heights."""
    cert = Certificate(f"spot checks on sigma_{k}")
    line = sigma_line(k)
    for t in t_values:
        upper = zeta_abs_upper(line.sigma, t, h, prec)
        bound = theorem1_bound(k, t, prec)
        cert.add(check(f"|zeta(sigma_{k} + i {t})| <= 1.546 t^(1/(2K-2)) log t", le(bound, f"{float(bound.lo):.6f}"), upper))
    return finish(cert, strict)
