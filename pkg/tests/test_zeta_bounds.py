from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest

from conftest import encloses
from vdcert import expsum
from vdcert import zeta_bounds as zb
from vdcert.errors import CapExceeded, DomainViolation
from vdcert.numerics import DirectedReal, check_ge, check_le, check_lt, e_const, pi

ETA3 = "4.7399"


def iv(value, prec=256):
    return DirectedReal.exact(value, prec)


# sigma lines and exponent identities --------------------------------------------------------


def test_sigma_line_for_k4():
    line = zb.sigma_line(4)
    assert line.sigma == Fraction(5, 7)
    assert line.exponent == Fraction(1, 14)
    assert line.K == 8 and line.eta == Fraction(2, 7)


def test_threshold_for_k5():
    line = zb.sigma_line(5)
    assert line.log_T == (Fraction("2.6134") * 15 + Fraction("2.8876") * 5) / 2
    assert line.log_T == Fraction("26.8195")
    with mpmath.workdps(60):
        assert encloses(line.T(), mpmath.exp(mpmath.mpf("26.8195")), Fraction(1, 10 ** 50))


def test_sigma_increases_towards_one():
    lines = [zb.sigma_line(k) for k in range(4, 65)]
    assert all(Fraction(1, 2) < a.sigma < b.sigma < 1 for a, b in zip(lines, lines[1:]))
    assert all(a.exponent > b.exponent > 0 for a, b in zip(lines, lines[1:]))
    assert 1 - lines[-1].sigma < Fraction(1, 10 ** 16)


def test_sigma_line_rejects_small_k():
    with pytest.raises(DomainViolation):
        zb.sigma_line(3)


def test_exponent_identities_hold_exactly():
    for k in range(4, 65):
        K = zb.big_K(k)
        assert zb.theta(k) * (Fraction(k, K - 1) - Fraction(2, K)) - Fraction(1, 2 * K - 2) == Fraction(1, 2 * K - 2)
        for r in range(2, k):
            R = zb.big_K(r)
            kappa3 = Fraction(k, 2 * K - 2) - Fraction(r, 2 * R - 2)
            kappa4 = Fraction(k, 2 * K - 2) - Fraction(2, R) + Fraction(r, 2 * R - 2)
            common = zb.theta(r) * (Fraction(k, 2 * K - 2) - Fraction(1, R))
            assert zb.theta(r) * kappa3 + Fraction(1, 2 * R - 2) == common
            assert zb.theta(r) * kappa4 - Fraction(1, 2 * R - 2) == common


def test_sigma_line_bound_examples(oracle):
    value = zb.theorem1_bound(4, 3)
    assert encloses(value, oracle.mpf("1.546") * oracle.mpf(3) ** (oracle.mpf(1) / 14) * oracle.log(3),
                    Fraction(1, 10 ** 70))
    far = zb.theorem1_bound(60, 1000)
    assert check_le(far - iv("1.546") * iv(1000).log(), Fraction(1, 10 ** 15))
    assert check_ge(far, iv("1.546") * iv(1000).log())


# Euler-Maclaurin tail -------------------------------------------------------------------------


def test_tail_at_tenth_line_is_small():
    line = zb.sigma_line(10)
    value = zb.em_tail_bound(e_const(256), line.sigma, log_t0=line.log_T)
    assert check_le(value, "0.001")


def test_tail_decreases_in_t0():
    values = [zb.em_tail_bound(2, Fraction(3, 4), t0) for t0 in (3, 10, 100, 10 ** 4, 10 ** 8)]
    assert all(check_lt(b, a.lo) for a, b in zip(values, values[1:]))


def test_tail_large_h_matches_series(oracle):
    h, sigma, t0 = 10 ** 6, Fraction(3, 4), 1000
    value = zb.em_tail_bound(h, sigma, t0)
    x = oracle.mpf(1) / (2 * h)
    series = h + oracle.mpf(1) / 2 + 3 * oracle.sqrt(1 + oracle.mpf(t0) ** -2) * (x ** 2 / 3 + x ** 4 / 45)
    approx = series / (oracle.mpf(h) * t0) ** oracle.mpf(0.75)
    assert abs(float(value) / float(approx) - 1) < 1e-15
    exact = (h + oracle.mpf(1) / 2 + 3 * oracle.sqrt(1 + oracle.mpf(t0) ** -2) * (1 - x * oracle.cot(x))) \
        / (oracle.mpf(h) * t0) ** oracle.mpf(0.75)
    assert encloses(value, exact, Fraction(1, 10 ** 70))


def test_tail_rejects_small_h():
    with pytest.raises(DomainViolation):
        zb.em_tail_bound("0.15", Fraction(3, 4), 10)


# C_r, D_r ---------------------------------------------------------------------------------------


def test_cd_at_r2_uses_square_root_of_two_pi(oracle):
    h = Fraction(3, 2)
    C, D = zb.cd_constants(2, ETA3, h)
    A2, B2 = expsum.second_derivative_coefficients()
    # R = 2: C_2 = A_2 h^(2 - 1) (h - 1) (1/(2 pi))^(1/2), D_2 = B_2 h (h - 1)^0 (2 pi)^(1/2)
    root = (2 * pi(256)).sqrt()
    assert check_le(abs(C - A2 * h * (h - 1) / root), Fraction(1, 10 ** 70))
    assert check_le(abs(D - B2 * h * root), Fraction(1, 10 ** 70))


def test_c_vanishes_as_h_approaches_one():
    previous = None
    for exponent in (2, 6, 12, 24):
        C, _ = zb.cd_constants(5, ETA3, 1 + Fraction(1, 10 ** exponent))
        assert check_le(C, Fraction(10, 10 ** exponent))
        if previous is not None:
            assert check_lt(C, previous.lo)
        previous = C


def test_cd_rejects_h_at_most_one():
    with pytest.raises(DomainViolation):
        zb.cd_constants(5, ETA3, 1)


def test_cd_for_large_r_at_h_e():
    # the stated ceilings 2.804 and 1.02 omit the factor (h - 1); the certified
    # values sit near (e - 1) times the uniform constants
    for r in (10, 20, 40):
        C, D = zb.cd_constants(r, ETA3, e_const(256))
        assert check_le(C, "4.7504") and check_le(D, "1.7461")
        assert not check_le(C, "2.804") and not check_le(D, "1.02")


# alpha, beta and the Table rows ----------------------------------------------------------------


def _row(k):
    return {row.k: row for row in zb.TABLE2}[k]


@pytest.mark.parametrize("k,ceiling", [(4, "1.1796"), (9, "0.2285")])
def test_alpha_for_table_rows(k, ceiling):
    row = _row(k)
    value = zb.alpha_k(k, row.h0, row.h1, row.eta3, Fraction(1, k), log_t=zb.sigma_line(k).log_T)
    assert check_le(value, Fraction(ceiling) + Fraction(1, 10 ** 4))


def test_alpha_rejects_phi_outside_range():
    row = _row(4)
    lo, hi = zb.phi_range(4)
    assert lo == Fraction(1, 18) and hi == Fraction(1, 4)
    for phi in (lo - Fraction(1, 1000), hi + Fraction(1, 1000)):
        with pytest.raises(DomainViolation):
            zb.alpha_k(4, row.h0, row.h1, row.eta3, phi, 10 ** 6)


def test_beta_for_row_four():
    row = _row(4)
    value = zb.beta_k(4, row.h0, row.h2, row.h3, row.eta3, log_t=zb.sigma_line(4).log_T)
    assert check_le(value, Fraction("0.3655") + Fraction(1, 10 ** 4))


def test_beta_at_k10_with_e_parameters():
    value = zb.beta_k(10, "e", 1, "e", ETA3, log_t=zb.sigma_line(10).log_T)
    assert check_le(value, "0.6064")


@pytest.mark.parametrize("k", [4, 6, 9])
def test_beta_decreases_in_t(k):
    row = _row(k)
    log_T = zb.sigma_line(k).log_T
    values = [zb.beta_k(k, row.h0, row.h2, row.h3, row.eta3, log_t=log_T * factor)
              for factor in (1, Fraction(11, 10), 2, 5, 20, 100)]
    assert all(check_lt(b, a.lo) for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("row", zb.TABLE2, ids=lambda row: f"k{row.k}")
def test_table_rows_pass_at_both_precisions(row):
    for prec in (256, 512):
        cert = zb.gamma_certificate(row.k, row, prec, strict=True)
        assert cert.passed
        assert check_ge(cert.values["h0h2"], 1 / (2 * pi(prec)))


def test_gamma_values_nonincreasing_across_rows():
    gammas = [Fraction(row.gamma) for row in zb.TABLE2]
    assert gammas == sorted(gammas, reverse=True)
    totals = [zb.gamma_certificate(row.k, row, 256).values["total"] for row in zb.TABLE2]
    for total, gamma in zip(totals, gammas):
        assert check_le(total, gamma)


def test_gamma_certificate_checks_row_order():
    with pytest.raises(DomainViolation):
        zb.gamma_certificate(5, _row(4))


def test_large_k_branch_failures_are_exactly_the_recursion_defect():
    cert = zb.large_k_certificate(prec=256, strict=False)
    failing = {item.name for item in cert.items if not item.passed}
    assert failing == {
        "chain: C_r(eta3, e), r>=10",
        "chain: D_r(eta3, e), r>=10",
        "chain: 0.12494 (1.115 + C_r + D_r) with computed C_r, D_r",
        "chain: alpha third term with computed C_k, D_k",
        "sup_k alpha_k(T_k), k>=10",
    }
    sup = cert.values["sup"]
    assert check_le(sup["beta"], "1.2235") and check_le(sup["combined"], "1.476") and check_lt(sup["final"], "1.546")
    assert check_ge(sup["alpha"], "0.323") and check_le(sup["alpha"], "0.3231")


# small t ------------------------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, reason="A(3) evaluates to about 1.5638, above the stated 1.4747")
def test_A_at_three():
    assert check_le(zb.A_of_t0(3), "1.4747")


def test_A_at_three_value(oracle):
    ratio = oracle.mpf("2.31") ** 2 / 9 + 1
    exact = ratio ** (oracle.mpf(23) / 42) * (1 + oracle.log(ratio) / (2 * oracle.log(3)))
    assert encloses(zb.A_of_t0(3), exact, Fraction(1, 10 ** 100))
    assert abs(float(exact) - 1.5638) < 1e-4


def test_A_at_exp_8_7():
    assert check_le(zb.A_of_t0(log_t0="8.7"), "1.0001")


def test_stage_two_reaches_threshold_for_every_k():
    cert = zb.small_t_certificate(range(4, 61), strict=False)
    stage2 = cert.values["stage2"]
    assert all(check_ge(stage2[k], 0) for k in range(4, 61))
    names = {item.name: item.passed for item in cert.items}
    assert names["A(exp(8.7))"] and not names["A(3)"]


def test_small_t_rejects_k_below_four():
    with pytest.raises(DomainViolation):
        zb.small_t_certificate(3)


# |zeta| upper bound --------------------------------------------------------------------------------


@pytest.mark.parametrize("sigma,t", [(Fraction(5, 7), 1000), (Fraction(1, 2), 50), (Fraction(1), 100),
                                     (Fraction(3, 5), 3), (Fraction(1, 2), Fraction(14134725, 10 ** 6))])
def test_zeta_upper_bound_dominates_mpmath(sigma, t):
    upper = zb.zeta_abs_upper(sigma, t)
    with mpmath.workdps(30):
        exact = abs(mpmath.zeta(mpmath.mpc(mpmath.mpf(sigma.numerator) / sigma.denominator,
                                           mpmath.mpf(t.numerator if isinstance(t, Fraction) else t)
                                           / (t.denominator if isinstance(t, Fraction) else 1))))
    assert float(exact) <= float(upper.hi)
    tail = zb.em_tail_bound(1, sigma, t)
    # the slack over the true value is the tail (twice) plus rounding
    assert float(upper.hi) - float(exact) <= 2 * float(tail.hi) + 1e-9


def test_zeta_upper_bound_examples():
    assert check_le(zb.zeta_abs_upper(Fraction(5, 7), 1000), zb.theorem1_bound(4, 1000).lo)
    assert check_le(zb.zeta_abs_upper(1, 100), iv(100).log().lo)
    assert check_le(zb.zeta_abs_upper(Fraction(1, 2), 50), (iv("0.618") * iv(50) ** iv(Fraction(1, 6)) * iv(50).log()).lo)


def test_more_terms_change_bound_by_at_most_the_tails():
    sigma, t = Fraction(5, 7), 2000
    one = zb.zeta_abs_upper(sigma, t, 1)
    two = zb.zeta_abs_upper(sigma, t, 2)
    tail_one = zb.em_tail_bound(1, sigma, t)
    tail_two = zb.em_tail_bound(2, sigma, t)
    assert float(two.hi) <= float(one.hi) + 2 * float(tail_two.hi) + 1e-12
    assert float(one.hi) <= float(two.hi) + 2 * float(tail_one.hi) + 1e-12


def test_zeta_upper_bound_domain_and_cap():
    with pytest.raises(DomainViolation):
        zb.zeta_abs_upper(Fraction(2, 5), 100)
    with pytest.raises(DomainViolation):
        zb.zeta_abs_upper(Fraction(3, 4), 2)
    with pytest.raises(CapExceeded):
        zb.zeta_abs_upper(Fraction(3, 4), 10 ** 6, cap=10 ** 5)


def test_spot_checks_at_moderate_heights():
    cert = zb.spot_checks(4, t_values=(10, 100, 1000, 10 ** 4), prec=256)
    assert cert.passed and len(cert.items) == 4


# premises for |t| <= 3 -----------------------------------------------------------------------------


def test_convexity_premises():
    cert = zb.premise_certificate(256)
    assert cert.passed and len(cert.items) == 3


def test_s_minus_one_zeta_matches_mpmath():
    for sigma, t in ((Fraction(1, 2), Fraction(1)), (Fraction(5, 7), Fraction(5, 2)), (Fraction(1), Fraction(0))):
        s = zb.ComplexInterval(iv(sigma), iv(t))
        main, remainder = zb.s_minus_one_zeta(s)
        with mpmath.workdps(40):
            point = mpmath.mpc(float(sigma), float(t))
            exact = (point - 1) * mpmath.zeta(point) if point != 1 else mpmath.mpf(1)
        assert abs(abs(complex(exact)) - float(main.abs_interval().mid)) <= float(remainder) + 1e-12
