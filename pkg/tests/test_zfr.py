from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import encloses
from vdcert import zfr
from vdcert.errors import CertificateFailure, DomainViolation
from vdcert.numerics import check_ge, check_le, check_lt, e_const

TOL = Fraction(1, 10 ** 60)


@pytest.fixture(scope="module")
def smoothing():
    return zfr.smoothing_constants(zfr.DEFAULT_CONFIG.poly, 256)


def _oracle_smoothing(mp):
    ratio = mp.mpf("1.74708744081848")
    theta = mp.findroot(lambda x: mp.sin(x) ** 2 - ratio * (1 - x * mp.cot(x)), mp.mpf("1.13"))
    sin, cos, tan, cot = mp.sin(theta), mp.cos(theta), mp.tan(theta), mp.cot(theta)
    return {
        "theta": theta,
        "g0": (theta * tan + 3 * theta * cot - 3) / cos ** 2,
        "gprime0": (3 * (4 * theta ** 2 - 5) + theta * (15 - 4 * theta ** 2) * cot) / (3 * sin ** 2) - theta / (sin * cos),
        "c0": 1 / (sin * cos ** 3),
        "c1": (theta - sin * cos) * tan ** 4,
        "c2": tan ** 3 * sin ** 2,
        "c3": (theta - sin * cos) * tan ** 2,
    }


def test_smoothing_constants_match_oracle(smoothing, oracle):
    expected = _oracle_smoothing(oracle)
    for name, value in expected.items():
        assert encloses(getattr(smoothing, name), value, TOL), name
    assert abs(float(expected["theta"]) - 1.132693699) < 1e-9
    assert abs(float(expected["g0"]) - 5.610921922) < 1e-9


def test_theta_equation_has_one_root(smoothing):
    assert zfr.theta_sign_changes(Fraction("1.74708744081848"), cells=400) == 1
    assert smoothing.theta.width < Fraction(1, 10 ** 25)


def test_smoothing_rejects_nonpositive_ratio():
    with pytest.raises(DomainViolation):
        zfr.smoothing_constants(zfr.TrigPolyData(b1="-1"), 256)


def test_gprime_sits_just_below_published_floor(smoothing):
    assert check_lt(smoothing.gprime0, "-0.659108")
    assert check_ge(smoothing.gprime0, "-0.6591082")


def test_c_of_R_oracle(smoothing, oracle):
    s = _oracle_smoothing(oracle)
    for R in (oracle.mpf("441.729"), oracle.mpf("350.588"), oracle.mpf(10)):
        tan = oracle.tan(s["theta"])
        H = s["c0"] / (1 - tan ** 2 / R ** 2) ** 2 * (
            s["c2"] * (R + 1) / R ** 3 * (oracle.exp(2 * s["theta"] / tan) + 1) + s["c1"] / R ** 2 + s["c3"])
        c = H * (R + 1) ** 2 / (R ** 3 * s["g0"]) + 1 + 1 / R
        assert encloses(zfr.c_of_R(str(R), smoothing), c, Fraction(1, 10 ** 50))
        assert encloses(zfr.c_prime_of_R(str(R), smoothing), 4 / oracle.pi ** 2 * (c - 1 / R), Fraction(1, 10 ** 50))


def test_c_of_R_decreases_towards_one(smoothing):
    values = [zfr.c_of_R(R, smoothing) for R in (10, 30, 100, 300, 1000, 3000, 10 ** 4)]
    assert all(check_lt(b, a.lo) for a, b in zip(values, values[1:]))
    assert all(check_ge(v, 1) for v in values)
    assert check_le(values[-1] - 1, Fraction(1, 100))


def test_c_of_R_domain(smoothing):
    with pytest.raises(DomainViolation):
        zfr.c_of_R(2, smoothing)
    with pytest.raises(DomainViolation):
        zfr.c_of_R("2.1", smoothing)  # below tan(theta) ~ 2.12


# lemma bounds ---------------------------------------------------------------------------------------


def test_zero_count_bound_oracle(oracle):
    value = zfr.zero_count_bound(eta=Fraction(2, 7), log_t=1000)
    eta, L = oracle.mpf(2) / 7, oracle.mpf(1000)
    expected = oracle.mpf("5.9975") * eta ** 1.5 * L + oracle.mpf("6.12") + (2 * oracle.log(L) / 3 - oracle.log(eta)) / oracle.mpf("1.879")
    assert encloses(value, expected, TOL)
    assert abs(float(expected) - 925.18) < 0.01


def test_zero_count_bound_domain():
    with pytest.raises(DomainViolation):
        zfr.zero_count_bound(t=50, eta="0.1")
    with pytest.raises(DomainViolation):
        zfr.zero_count_bound(t=1000, eta="0.3")
    with pytest.raises(DomainViolation):
        zfr.zero_count_bound(t=1000, eta=0)
    zfr.zero_count_bound(t=100, eta=Fraction(2, 7))


def test_log_zeta_k_line_oracle(oracle):
    log_t = oracle.log(oracle.mpf(10) ** 13)
    value = zfr.log_zeta_integral_bound("k-line", t=10 ** 13, k=5)
    expected = log_t / 30 + oracle.log(log_t) + oracle.log(oracle.mpf("1.546"))
    assert encloses(value, expected, TOL)
    assert abs(float(expected) - 4.8324) < 1e-4


def test_log_zeta_convexity_oracle(oracle):
    L = oracle.mpf(40)
    value = zfr.log_zeta_integral_bound("convexity", log_t=40, eta="0.4")
    eta = oracle.mpf("0.4")
    assert encloses(value, (8 * eta - 1) / 18 * L + oracle.log(L) + oracle.mpf("1.659") - oracle.mpf("4.279") * eta, TOL)


def test_log_zeta_domain_errors():
    with pytest.raises(DomainViolation):
        zfr.log_zeta_integral_bound("k-line", t=10 ** 12, k=5)
    with pytest.raises(DomainViolation):
        zfr.log_zeta_integral_bound("k-line", t=10 ** 13, k=3)
    with pytest.raises(DomainViolation):
        zfr.log_zeta_integral_bound("k-line", log_t=30, k=60)
    with pytest.raises(DomainViolation):
        zfr.log_zeta_integral_bound("convexity", log_t=40, eta="0.6")
    with pytest.raises(DomainViolation):
        zfr.log_zeta_integral_bound("other", log_t=40)


def test_zero_sum_branches_meet_at_seam():
    # both bounds apply at eta = 2/7 and t = 3e12, where they should agree within 5%
    for t in ("3e12", "3.1e12"):
        small = zfr.zero_sum_bound_small_eta(t=t, eta=Fraction(2, 7))
        large = zfr.zero_sum_bound_large_eta(t=t, eta=Fraction(2, 7))
        a, b = float(small.value.mid), float(large.value.mid)
        assert abs(a - b) / max(abs(a), abs(b)) < 0.05
        assert encloses(small.n_coefficient, Fraction(49, 4)) and encloses(large.n_coefficient, Fraction(49, 4))


def test_nu_of_eta(oracle):
    eta = oracle.mpf("0.4")
    assert encloses(zfr.nu_of_eta("0.4"), (1 / eta ** 2 + 1 / (1 - eta) ** 2) / 2, TOL)


def test_lemma_constants_certify():
    assert zfr.lemma_certificate(prec=256).passed


# main chains ------------------------------------------------------------------------------------------


def test_large_t_chain():
    cert = zfr.main_inequality_large_t(prec=256)
    assert cert.passed
    assert check_ge(cert.values["ratio"], "0.04709785") and check_le(cert.values["ratio"], "0.0471")
    assert check_ge(cert.values["x_star"], "15.832") and check_le(cert.values["x_star"], "15.833")


def test_small_t_chain_fails_only_on_the_zero_term():
    cert = zfr.main_inequality_small_t(prec=256, strict=False)
    failing = [item.name for item in cert.items if not item.passed]
    assert failing == ["coefficient of L1/L2 from 0.087 pi^2 b1 (1-beta)/eta^2"]
    assert check_ge(cert.values["zero_term"], "0.000257") and check_le(cert.values["zero_term"], "0.000258")
    assert check_ge(cert.values["ratio"], "0.0475")


def test_small_t_chain_strict_raises():
    with pytest.raises(CertificateFailure):
        zfr.main_inequality_small_t(prec=256, strict=True)


def test_below_t0_and_x_star():
    assert zfr.below_t0_certificate(prec=256).passed
    alpha = zfr.DEFAULT_CONFIG.alpha
    xs = zfr.x_star(alpha)
    assert zfr.A1(xs, alpha).contains(0)
    assert check_ge(zfr.A1("15.83", alpha), 0) and check_lt(zfr.A1("15.84", alpha), 0)


def test_chain_reacts_to_config_changes():
    weaker = zfr.DEFAULT_CONFIG.with_overrides(M1="0.05")
    cert = zfr.main_inequality_large_t(weaker, 256, strict=False)
    assert not cert.passed
    assert weaker.poly == zfr.DEFAULT_CONFIG.poly
    changed = zfr.DEFAULT_CONFIG.with_overrides(D=40)
    assert changed.poly.D == 40 and changed.alpha == zfr.DEFAULT_CONFIG.alpha


# regions ---------------------------------------------------------------------------------------------


def test_region_widths_oracle(oracle):
    regions = zfr.default_regions()
    e = oracle.e
    assert encloses(zfr.region_width(regions["classical"], log_t=e_const(256)), 1 / (oracle.mpf("5.558691") * e), TOL)
    assert encloses(zfr.region_width(regions["new"], log_t=e_const(256)), 1 / (oracle.mpf("21.233") * e), TOL)
    assert encloses(zfr.region_width(regions["new"], t=e_const(256).exp()), 1 / (oracle.mpf("21.233") * e), TOL)
    assert encloses(zfr.region_width(regions["vk"], log_t=1000),
                    1 / (oracle.mpf("55.241") * oracle.mpf(1000) ** (oracle.mpf(2) / 3) * oracle.log(1000) ** (oracle.mpf(1) / 3)), TOL)
    u = oracle.mpf(50)
    a, b, c, d, e5, j = (oracle.mpf(x) for x in ("0.04962", "0.0196", "1.15", "0.685", "0.155", "0.618"))
    J = u / 6 + oracle.log(u) + oracle.log(j)
    assert encloses(zfr.region_width(regions["ford"], log_t=50), (a - b / (J + c)) / (J + d + e5 * oracle.log(u)), TOL)


def test_ford_overtakes_classical_near_46():
    regions = zfr.default_regions()
    below = zfr.region_width(regions["ford"], log_t="46.2") - zfr.region_width(regions["classical"], log_t="46.2")
    above = zfr.region_width(regions["ford"], log_t="46.3") - zfr.region_width(regions["classical"], log_t="46.3")
    assert check_lt(below, 0) and check_ge(above, 0)


def test_crossovers_against_oracle(oracle):
    regions = zfr.default_regions()
    (root,) = zfr.crossovers(regions["new"], regions["ford"], 100, 300)
    J = lambda u: u / 6 + oracle.log(u) + oracle.log(oracle.mpf("0.618"))
    ford = lambda u: (oracle.mpf("0.04962") - oracle.mpf("0.0196") / (J(u) + oracle.mpf("1.15"))) / (
        J(u) + oracle.mpf("0.685") + oracle.mpf("0.155") * oracle.log(u))
    new = lambda u: oracle.log(u) / (oracle.mpf("21.233") * u)
    expected = oracle.findroot(lambda u: new(u) - ford(u), 170)
    assert encloses(root, expected, Fraction(1, 10 ** 20))


def test_crossover_of_region_with_itself_is_empty():
    new = zfr.default_regions()["new"]
    assert zfr.crossovers(new, new, 10, 1000) == []


def test_best_region():
    regions = list(zfr.default_regions().values())
    assert zfr.best_region(regions, 300)[0] == "new"
    assert zfr.best_region(regions, 10 ** 7)[0] == "vk"
    assert zfr.best_region(regions, 10)[0] == "classical"
    best, widths = zfr.best_region(regions, "0.9")
    assert set(widths) == {"classical"} and best == "classical"


def test_region_spec_validation():
    with pytest.raises(DomainViolation):
        zfr.RegionSpec("x", "unknown", ("1",))
    with pytest.raises(DomainViolation):
        zfr.RegionSpec("x", "ford", ("1", "2"))
    with pytest.raises(DomainViolation):
        zfr.default_regions()["ford"].width(Fraction(1, 2))
