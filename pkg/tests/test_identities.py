from fractions import Fraction

import mpmath
import pytest

from zetarecur.coeffs import limit_coeffs
from zetarecur.identities import (
    DEFAULT_SCHEDULE,
    recurrence_coefficients,
    generate_tanh_recurrence,
    klimit_combo,
    klimit_value,
    limit_value,
    schedule_down_to,
    verify_coth_identities,
    verify_klimit,
    verify_limit,
    verify_recurrence_cor41,
    verify_tanh_ids,
)
from zetarecur.zetanum import zeta_int


def hp(fn, dps=100):
    with mpmath.workdps(dps):
        return fn()


def test_limit_value_N1():
    want = hp(lambda: 7 * mpmath.zeta(3) / mpmath.pi**2)
    assert abs(limit_value(1) - want) < mpmath.mpf(10) ** -70
    assert abs(limit_value(1) - mpmath.mpf("0.852557")) < 5e-7


def test_limit_value_N2():
    want = hp(lambda: Fraction(7, 3) * mpmath.zeta(3) / mpmath.pi**2 + 31 * mpmath.zeta(5) / mpmath.pi**4)
    assert abs(limit_value(2) - want) < mpmath.mpf(10) ** -70


def test_schedule():
    assert DEFAULT_SCHEDULE[0] == 1 and DEFAULT_SCHEDULE[-1] == Fraction(1, 16)
    assert schedule_down_to(Fraction(1, 4)) == (1, Fraction(1, 2), Fraction(1, 4))


@pytest.mark.parametrize("N,tol", [(1, "1e-12"), (2, "1e-10"), (3, "1e-10")])
def test_verify_limit(N, tol):
    cert = verify_limit(N, tol=tol)
    assert cert.passed
    assert cert.decreasing
    assert cert.decay_slope is not None and cert.decay_slope < 0


def test_uncorrected_residual_is_half_alpha():
    # the sum approaches its limit like L - alpha/2, so the raw gap tracks alpha/2
    cert = verify_limit(1)
    for a, raw in zip(cert.schedule[2:], cert.raw_residuals[2:]):
        assert abs(raw - mpmath.mpf(a.numerator) / a.denominator / 2) < 1e-12


def test_verify_limit_rejects_bad_schedule():
    with pytest.raises(ValueError):
        verify_limit(1, schedule=[Fraction(1, 2), Fraction(1)])
    with pytest.raises(ValueError):
        verify_limit(0)


def test_klimit_K0_is_plain_limit():
    for M in (1, 2, 4):
        combo = klimit_combo(0, M)
        assert combo.zeta_coeffs == dict(enumerate(limit_coeffs(M).r, start=1))


def test_klimit_examples():
    c = klimit_combo(1, 1)
    assert c.weights == {1: -2, 2: 4}
    assert c.zeta_coeffs == {1: Fraction(-14, 3), 2: 124}
    assert abs(klimit_value(1, 1) - mpmath.mpf("0.751619")) < 1e-6


def test_klimit_weights_sum_rule():
    # the K-th step spreads weight over M..M+K
    for K in range(0, 5):
        for M in (1, 2):
            w = klimit_combo(K, M).weights
            assert min(w) == M and max(w) == M + K


@pytest.mark.parametrize("K,M", [(1, 1), (1, 2), (2, 1)])
def test_verify_klimit(K, M):
    cert = verify_klimit(K, M, schedule=schedule_down_to(Fraction(1, 8)), tol="1e-6")
    assert cert.passed, [float(r) for r in cert.residuals]


def test_zeta3_recurrence_first_coefficient():
    r = recurrence_coefficients(1, 400)[0]
    assert abs(float(r) - 7) < 1e-30
    assert r < 7


def test_zeta3_recurrence_recurrence():
    rep = verify_recurrence_cor41(J=40, n_budget=200)
    assert rep.passed
    assert rep.residual <= rep.outer_tail_bound + rep.inner_tail_bound
    assert abs(rep.rhs - mpmath.mpf("3.4102272")) < 1e-6


def test_zeta3_recurrence_residual_shrinks_with_J():
    res = [verify_recurrence_cor41(J=J).residual for J in (10, 20, 40)]
    assert res[0] > res[1] > res[2]


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_tanh_ids(x):
    for chk in verify_tanh_ids([x]):
        assert chk.ok, chk


def test_coth_identities():
    checks = verify_coth_identities([Fraction(1, 2), Fraction(3, 2)], 3)
    assert checks and all(c.ok for c in checks)


def test_generator_reproduces_zeta3_recurrence():
    gen = generate_tanh_recurrence(1)
    assert abs(gen.coefficients[0] + 21) < 1e-30
    cor = recurrence_coefficients(len(gen.coefficients), 200)
    # generator relation = recurrence left side minus 28 zeta(3)/pi^2
    for i, (g, c) in enumerate(zip(gen.coefficients, cor), start=1):
        c = c - 28 if i == 1 else c
        weight = zeta_int(2 * i + 1) / mpmath.pi ** (2 * i)
        assert abs(g - c) * weight <= gen.truncation_bound


@pytest.mark.parametrize("N", [1, 2, 3])
def test_generator_relation_holds(N):
    rel = generate_tanh_recurrence(N)
    assert rel.passed
    assert rel.residual <= rel.truncation_bound + mpmath.mpf(2) ** -200


def test_generator_rejects_N0():
    with pytest.raises(ValueError):
        generate_tanh_recurrence(0)
