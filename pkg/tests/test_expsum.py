from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
import pytest

from conftest import as_fraction, encloses
from vdcert import expsum
from vdcert.errors import CapExceeded, DomainViolation, VdcertError
from vdcert.numerics import DirectedReal, check_ge, check_le, check_lt, pi

ETA3 = "4.7399"


def iv(value, prec=256):
    return DirectedReal.exact(value, prec)


# oracle ----------------------------------------------------------------------------------


def test_constant_phase_sums_to_length():
    assert expsum.brute_force_expsum(expsum.PolynomialPhase([0]), 0, 17) == pytest.approx(17, abs=1e-12)


@pytest.mark.parametrize("m", [1, 5, 50, 5000])
def test_half_integer_slope_cancels(m):
    value = expsum.brute_force_expsum(expsum.PolynomialPhase([0, Fraction(1, 2)]), 0, 2 * m)
    assert value == pytest.approx(0, abs=1e-9)


def test_zeta_log_sum_matches_mpmath_oracle():
    phase = expsum.ZetaLogPhase(1000)
    first = expsum.brute_force_expsum_with_error(phase, 10, 100)
    second = expsum.brute_force_expsum_with_error(phase, 10, 100)
    assert first == second
    with mpmath.workdps(40):
        c = mpmath.mpf(1000) / (2 * mpmath.pi)
        total = mpmath.fsum(mpmath.expjpi(-2 * c * mpmath.log(n)) for n in range(11, 111))
        exact = abs(total)
    assert first.value <= 100
    assert abs(first.value - float(exact)) <= 1e-9
    assert first.error <= 1e-9


def test_zeta_log_sum_at_large_height_matches_mpmath():
    t, a, N = 10 ** 9, 5000, 3000
    value = expsum.brute_force_expsum_with_error(expsum.ZetaLogPhase(t), a, N)
    with mpmath.workdps(40):
        c = mpmath.mpf(t) / (2 * mpmath.pi)
        exact = abs(mpmath.fsum(mpmath.expjpi(-2 * c * mpmath.log(n)) for n in range(a + 1, a + N + 1)))
    assert abs(value.value - float(exact)) <= value.error + 1e-12
    assert value.error < 1e-6


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        expsum.brute_force_expsum(expsum.PolynomialPhase([0]), 0, 11, cap=10)


def test_derivatives_agree_with_finite_differences():
    rng = random.Random(5)
    phases = [expsum.ZetaLogPhase(12345), expsum.PolynomialPhase(["0.3", "-1.7", "0.25", "0.01"])]
    for phase in phases:
        for _ in range(50):
            x = rng.uniform(5, 500)
            for order in (1, 2, 3):
                step = 1e-5 * x
                with mpmath.workdps(40):
                    # central difference of the next lower derivative, in high precision
                    lower = lambda u: mpmath.mpf(phase.derivative(float(u), order - 1)) if order > 1 else _exact_value(phase, u)
                    approx = (lower(mpmath.mpf(x) + step) - lower(mpmath.mpf(x) - step)) / (2 * step)
                exact = phase.derivative(x, order)
                assert abs(float(approx) - exact) <= 1e-6 * abs(exact)


def _exact_value(phase, u):
    if isinstance(phase, expsum.ZetaLogPhase):
        return -mpmath.mpf(float(phase.t)) / (2 * mpmath.pi) * mpmath.log(u)
    return sum(mpmath.mpf(c.numerator) / c.denominator * u ** m for m, c in enumerate(phase.coefficients))


# first and second derivative tests --------------------------------------------------------


def test_kuzmin_landau_examples(oracle):
    assert encloses(expsum.kuzmin_landau(2 / pi(256)), 1)
    assert encloses(expsum.kuzmin_landau("0.1"), 20 / oracle.pi, Fraction(1, 10 ** 100))
    assert abs(float(expsum.kuzmin_landau("0.1")) - 6.3661977) < 1e-7
    assert encloses(expsum.kuzmin_landau("0.5"), 4 / oracle.pi, Fraction(1, 10 ** 100))
    with pytest.raises(DomainViolation):
        expsum.kuzmin_landau(0)


def test_general_kuzmin_landau_examples(oracle):
    assert encloses(expsum.kuzmin_landau_general("0.5", "0.5"), 4 / oracle.pi, Fraction(1, 10 ** 100))
    for lam in ("0.01", "0.2", "0.5"):
        general = expsum.kuzmin_landau_general(lam, lam)
        assert general.lo <= expsum.kuzmin_landau(lam).hi and expsum.kuzmin_landau(lam).lo <= general.hi
    value = expsum.kuzmin_landau_general("0.1", "0.3")
    assert encloses(value, (10 + oracle.mpf(10) / 3) / oracle.pi, Fraction(1, 10 ** 100))
    assert abs(float(value) - 4.2441318) < 1e-7
    with pytest.raises(DomainViolation):
        expsum.kuzmin_landau_general("0.6", "0.5")
    with pytest.raises(DomainViolation):
        expsum.kuzmin_landau_general("0", "0.5")


def test_kuzmin_landau_dominates_linear_phases():
    rng = random.Random(17)
    for _ in range(200):
        slope = Fraction(rng.randint(1, 999), 1000)
        N = rng.randint(1, 3000)
        value = expsum.brute_force_expsum(expsum.PolynomialPhase([0, slope]), rng.randint(0, 100), N)
        bound = expsum.kuzmin_landau_general(slope, 1 - slope)
        assert value <= float(bound.hi) + 1e-9


def test_second_derivative_example(oracle):
    value = expsum.second_derivative_bound(100, "1.01", "1e-4")
    c = 4 / oracle.sqrt(oracle.pi)
    first = c * 100 * oracle.mpf("1.01") * oracle.mpf("1e-2")
    exact = first + 100 * oracle.mpf("1.01") * oracle.mpf("1e-4") + c * 100
    assert encloses(value, exact, Fraction(1, 10 ** 100))
    assert abs(float(first) - 2.27932592) < 1e-8
    assert abs(float(value) - (2.27932592 + 0.0101 + 225.67583342)) < 1e-7
    split = expsum.second_derivative_split("1e-4")
    assert encloses(split, oracle.sqrt(oracle.mpf("1e-4") / oracle.pi), Fraction(1, 10 ** 100))


def test_second_derivative_large_lambda_exceeds_trivial_bound():
    rng = random.Random(3)
    for _ in range(100):
        lam = Fraction(rng.randint(1, 10 ** 6), 10 ** 6) + Fraction(3927, 10000)  # > pi/16
        N = rng.randint(1, 10 ** 6)
        h = 1 + Fraction(rng.randint(1, 1000), 1000)
        assert check_ge(expsum.second_derivative_bound(N, h, lam), N)


def test_second_derivative_coefficients(oracle):
    A2, B2 = expsum.second_derivative_coefficients()
    assert encloses(A2, (2 + oracle.sqrt(4 + oracle.pi)) / oracle.sqrt(oracle.pi), Fraction(1, 10 ** 100))
    assert encloses(B2, 4 / oracle.sqrt(oracle.pi), Fraction(1, 10 ** 100))
    assert abs(float(A2) - 2.6361057818) < 1e-10
    assert abs(float(B2) - 2.256758) < 1e-6


def test_lambda0_balances_the_two_branches():
    lam0 = expsum.second_derivative_lambda0()
    assert abs(float(lam0) - 0.1439) < 1e-4
    A2, B2 = expsum.second_derivative_coefficients()
    root = lam0.sqrt()
    # (4/sqrt(pi) + lambda0^(1/2)) lambda0^(1/2) = 1, and that prefactor is A2
    assert check_le(abs((B2 + root) * root - 1), Fraction(1, 10 ** 70))
    assert check_le(abs(A2 - (B2 + root)), Fraction(1, 10 ** 70))
    # at lambda0 the three-term bound and the A2 form coincide
    N, h = 1000, Fraction(3, 2)
    three_term = expsum.second_derivative_bound(N, h, lam0)
    ab_form = expsum.second_derivative_AB(N, h, lam0)
    assert check_le(abs(three_term - ab_form), Fraction(1, 10 ** 60))


def test_quadratic_phase_dominance():
    lam = Fraction(1, 2 ** 12)
    phase = expsum.PolynomialPhase([0, Fraction(1, 7), lam / 2])
    value = expsum.brute_force_expsum(phase, 0, 1000)
    assert value <= float(expsum.second_derivative_bound(1000, Fraction(10001, 10000), lam).hi)
    assert value <= float(expsum.second_derivative_AB(1000, 1, lam).hi)


def test_second_derivative_sweep_against_oracle():
    rng = random.Random(2024)
    worst = math.inf
    for _ in range(1000):
        N = rng.randint(1, 400)
        lam = Fraction(rng.randint(1, 2 ** 14), 2 ** 20)
        linear = Fraction(rng.randint(0, 999), 1000)
        value = expsum.brute_force_expsum(expsum.PolynomialPhase([0, linear, lam / 2]), rng.randint(0, 50), N)
        h = 1 + Fraction(rng.randint(0, 2000), 1000)
        bound = expsum.second_derivative_AB(N, h, lam)
        worst = min(worst, float(bound.lo) - value)
        assert value <= float(bound.hi) + 1e-9
    assert worst > 0


# third and k-th derivative constants ------------------------------------------------------


def test_third_derivative_constants_closed_forms(oracle):
    c = expsum.third_derivative_constants(ETA3, 3)
    eta, h = oracle.mpf(ETA3), oracle.mpf(3)
    root_pi = oracle.sqrt(oracle.pi)
    lam0 = (1 / eta + 32 * oracle.sqrt(eta) * h / (15 * root_pi)) ** -3
    delta3 = oracle.sqrt(oracle.mpf(1) / 2 + oracle.sqrt(1 + oracle.mpf(3) / 8 * root_pi * eta ** 1.5) / 2)
    cube = oracle.cbrt(lam0)
    A3 = oracle.sqrt(1 / (eta * h) + 32 / (15 * root_pi) * oracle.sqrt(eta + cube) + (eta + cube) * cube / 3) * delta3
    B3 = oracle.sqrt(oracle.mpf(32) / (3 * root_pi)) / eta ** 0.25 * delta3
    for value, exact in ((c.lambda0, lam0), (c.delta3, delta3), (c.A3, A3), (c.B3, B3)):
        assert encloses(value, exact, Fraction(1, 10 ** 100))


@pytest.mark.parametrize("eta3", ["0.01", "0.5", "1", ETA3, "50", "1000"])
def test_delta3_exceeds_one(eta3):
    assert check_ge(expsum.third_derivative_constants(eta3, 2).delta3, 1)


@pytest.mark.parametrize("eta3,h", [("0.1", "1.01"), ("1", "2"), (ETA3, 3), ("20", "1.5")])
def test_third_derivative_product_lower_bound(eta3, h):
    c = expsum.third_derivative_constants(eta3, h)
    floor = 32 / (3 * (5 * pi(256)).sqrt())
    assert check_ge(c.A3 * c.B3 - floor, 0)


def test_tenth_derivative_constants():
    for prec in (256, 512):
        c = expsum.kth_derivative_constants(10, ETA3, 3, prec)
        assert check_le(c.A, "2.744") and check_le(c.B, "1.020")
        assert c.K == 512 and len(c.levels) == 8


def test_delta_j_decreasing_and_above_one():
    values = [expsum.delta_j(j, ETA3) for j in range(3, 41)]
    assert all(check_ge(v, 1) and not v.contains(1) for v in values)
    assert all(check_lt(later, earlier.lo) for earlier, later in zip(values, values[1:]))


def test_delta_j_matches_formula(oracle):
    for j in (3, 10, 25):
        J = 2 ** (j - 1)
        exact = oracle.sqrt(1 + 2 / oracle.mpf(2337) ** (1 - oracle.mpf(2) / J)
                            * (9 * oracle.pi / 1024 * oracle.mpf(ETA3)) ** (oracle.mpf(1) / J))
        assert encloses(expsum.delta_j(j, ETA3), exact, Fraction(1, 10 ** 100))


def test_constants_decrease_in_h():
    high = expsum.kth_derivative_constants(20, ETA3, 3)
    low = expsum.kth_derivative_constants(20, ETA3, "1.5")
    for k in range(4, 21):
        assert check_le(high.levels[k - 3][0], low.levels[k - 3][0].lo)


def test_product_recursion_lower_bound():
    c = expsum.kth_derivative_constants(30, ETA3, 3)
    A3, B3 = c.levels[0]
    for k in range(4, 31):
        K = 2 ** (k - 1)
        A, B = c.levels[k - 3]
        exponent = Fraction(1, 6) - Fraction(2, 3 * K)
        rhs = iv(2) ** iv(exponent) * (A3 * B3) ** iv(Fraction(4, K))
        assert check_ge(A * B - rhs, 0), k


def test_a_coefficient_below_two_to_one_twelfth():
    limit = iv(2) ** iv(Fraction(1, 12))
    for m in range(1, 61):
        assert check_lt(expsum.a_coefficient(2 ** m), limit.lo), m


def test_fixed_point_map_converges_monotonically():
    cert = expsum.uniform_kth_constants(60, 256)
    with mpmath.workdps(80):
        J = 2 ** 9
        delta10 = mpmath.sqrt(1 + 2 / mpmath.mpf(2337) ** (1 - mpmath.mpf(2) / J)
                              * (9 * mpmath.pi / 1024 * mpmath.mpf(ETA3)) ** (mpmath.mpf(1) / J))
        x = mpmath.mpf(float(cert.values["A10"]))
        step = 2 ** (mpmath.mpf(1) / 12)
        previous_gap = None
        for _ in range(100):
            nxt = delta10 * (1 + step * mpmath.sqrt(x))
            gap = nxt - x
            if previous_gap is not None:
                assert gap * previous_gap >= 0  # no oscillation
            previous_gap = gap
            x = nxt
        root = 2 ** (-mpmath.mpf(11) / 12) * delta10
        x_star = (root + mpmath.sqrt(root ** 2 + delta10)) ** 2
        assert abs(x - x_star) < mpmath.mpf(10) ** -40
    assert encloses(cert.values["x_star"], x_star, Fraction(1, 10 ** 60))
    assert check_le(cert.values["x_star"], "2.762")


def test_uniform_constants_need_k_max_ten():
    with pytest.raises(DomainViolation):
        expsum.uniform_kth_constants(9)


# the k-th derivative bound ---------------------------------------------------------------


def test_bound_rejects_mismatched_order():
    constants = expsum.kth_derivative_constants(4, ETA3, 2)
    with pytest.raises(VdcertError):
        expsum.kth_derivative_bound(expsum.DerivTestParams(5, 0, 100, 2, "1e-6"), constants)


@pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
def test_short_sums_fall_back_to_trivial_bound(k):
    rng = random.Random(k)
    for h in ("1.01", "2", "3"):
        constants = expsum.kth_derivative_constants(k, ETA3, h)
        for N in (1, 10, 500, 2336):
            for _ in range(40):
                lam = Fraction(10) ** rng.randint(-60, 2)
                bound = expsum.kth_derivative_bound(expsum.DerivTestParams(k, 0, N, h, lam), constants)
                assert check_ge(bound, N), (k, h, N, lam)


@pytest.mark.parametrize("k", [3, 4, 6, 9])
def test_small_lambda_branch_b_term_dominates(k):
    N = 10 ** 4
    K = 2 ** (k - 1)
    constants = expsum.kth_derivative_constants(k, ETA3, 2)
    lam0 = expsum.kth_lambda0(k, ETA3, N)
    for factor in (1, Fraction(1, 10), Fraction(1, 10 ** 6)):
        lam = lam0 * factor
        b_term = constants.B * iv(N) ** iv(Fraction(K - 2, K)) / lam ** iv(Fraction(1, 2 * K - 2))
        assert check_ge(b_term, N)


def test_random_instances_are_admissible_and_deterministic():
    first = expsum.random_instances(50, 11)
    assert first == expsum.random_instances(50, 11)
    assert first != expsum.random_instances(50, 12)
    for inst in first:
        K = 2 ** (inst.k - 1)
        assert 3 <= inst.k <= 8 and 1 <= inst.N <= 10 ** 5 and 10 ** 3 <= inst.t <= 10 ** 9
        lam, h = expsum.ZetaLogPhase(inst.t).derivative_envelope(inst.a, inst.N, inst.k)
        assert check_le(h, 3)
        assert float(lam.hi) <= inst.N ** (-1 + 1 / K) * (1 + 1e-9)
        assert float(lam.lo) >= inst.N ** (-2 + 2 / K) * (1 - 1e-9)


def test_oracle_dominance_small_sweep():
    for instance in expsum.random_instances(60, 77):
        result = expsum.oracle_dominance(instance)
        assert not result.violated, instance.label()
        for name, bound in result.bounds.items():
            assert bound.hi >= result.oracle.value - result.oracle.error - 1e-6, name


# A process ---------------------------------------------------------------------------------


def test_a_process_constant_phase():
    for a, N, q in ((0, 10, 3), (5, 100, 7), (2, 1, 4)):
        lhs, rhs, _ = expsum.a_process_sides(expsum.PolynomialPhase([0]), a, N, q)
        assert lhs == pytest.approx(N * N)
        assert lhs <= rhs * (1 + 1e-12)


def test_a_process_with_q_one_is_trivial_bound():
    phase = expsum.ZetaLogPhase(5000)
    lhs, rhs, _ = expsum.a_process_sides(phase, 20, 300, 1)
    assert rhs == pytest.approx(300 * 300)
    assert lhs <= rhs


def test_a_process_random_phases():
    rng = random.Random(31)
    for _ in range(1000):
        N = int(10 ** rng.uniform(0, 4))
        q = rng.randint(1, 64)
        if rng.random() < 0.5:
            phase = expsum.ZetaLogPhase(Fraction(rng.randint(10 ** 3, 10 ** 8)))
            a = rng.randint(1, 10 ** 4)
        else:
            phase = expsum.PolynomialPhase([0] + [Fraction(rng.randint(-999, 999), rng.randint(1, 997)) for _ in range(3)])
            a = rng.randint(0, 1000)
        assert expsum.a_process_check(phase, a, N, q)


# sum inequality -------------------------------------------------------------------------------


def test_weighted_power_sum_examples():
    bound = expsum.weighted_power_sum_bound(10, 1)
    assert encloses(bound, Fraction(100, 6))
    exact = sum((1 - Fraction(r, 10)) * r for r in range(1, 11))
    assert exact == Fraction(33, 2)
    assert check_ge(bound, exact)
    for q in (1, 2, 7, 100):
        half = expsum.weighted_power_sum_bound(q, 0)
        assert encloses(half, Fraction(q, 2))
        assert check_ge(half, Fraction(q - 1, 2))
    for s in ("-0.9", "0", "0.5", "1"):
        assert check_ge(expsum.weighted_power_sum_bound(1, s), 0) and not expsum.weighted_power_sum_bound(1, s).contains(0)


def test_weighted_power_sum_dominates_exact_sum():
    rng = random.Random(8)
    for _ in range(300):
        q = rng.randint(1, 500)
        s = Fraction(rng.randint(-999, 1000), 1000)
        exact = expsum.weighted_power_sum(q, s)
        assert exact <= float(expsum.weighted_power_sum_bound(q, s).hi) + 1e-9


@pytest.mark.parametrize("q,s", [(0, 1), (5, -1), (5, "1.5")])
def test_weighted_power_sum_domain(q, s):
    with pytest.raises(DomainViolation):
        expsum.weighted_power_sum_bound(q, s)
