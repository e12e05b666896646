from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zetarecur.zetanum import (
    coth_sum,
    cor32_sides,
    lambert_sum,
    ramanujan_sides,
    s_sum,
    zeta_even,
    zeta_int,
    zeta_int_bounded,
)



def oracle(fn, dps=110):
    with mpmath.workdps(dps):
        return fn()


def test_zeta_even_examples():

    with mpmath.workprec(256):
        assert abs(zeta_even(2, 256) - mpmath.pi**2 / 6) < mpmath.mpf(2) ** -250
        assert abs(zeta_even(4, 256) - mpmath.pi**4 / 90) < mpmath.mpf(2) ** -250


@pytest.mark.parametrize("s", [2, 3, 4, 5, 7, 11, 21, 51])
def test_zeta_int_vs_mpmath(s):
    want = oracle(lambda: mpmath.zeta(s))
    with mpmath.workprec(256):
        assert abs(zeta_int(s, 256) - want) < mpmath.mpf(2) ** -250


def test_zeta_int_bound_is_honest():
    v, bound = zeta_int_bounded(3, 128)
    want = oracle(lambda: mpmath.zeta(3))
    with mpmath.workprec(200):
        assert abs(mpmath.mpf(v) - want) <= bound + mpmath.mpf(2) ** -120


def test_zeta_int_rejects_pole():
    with pytest.raises(ValueError):
        zeta_int(1)


def test_s_sum_vs_nsum():
    for alpha, N in [(Fraction(1), 1), (Fraction(1, 2), 1), (Fraction(1, 4), 2)]:
        a = float(alpha)
        want = oracle(lambda: mpmath.nsum(
            lambda n: 2 ** (2 * N) * mpmath.exp(-2 * N * a * n) * (1 - mpmath.exp(-2 * a * n))
            / ((1 + mpmath.exp(-2 * a * n)) ** (2 * N + 1) * n), [1, mpmath.inf]), 60)
        res = s_sum(alpha, N, 256)
        assert res.converged
        assert abs(res.value - want) < mpmath.mpf(10) ** -50


def test_s_sum_half_value():
    # sum 4 sinh(n/2)/(n cosh(n/2)^3) at alpha = 1/2; the actual value is ~0.6025577
    res = s_sum(Fraction(1, 2), 1, 256)
    want = oracle(lambda: mpmath.mpf("0.602557732510342529445533"))
    assert abs(res.value - want) < 1e-22


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=16), st.integers(1, 3))
def test_s_sum_tail_bound_is_honest(alpha, N):
    lo = s_sum(alpha, N, 96)
    hi = s_sum(alpha, N, 192, tol=mpmath.mpf(2) ** -180)
    with mpmath.workprec(192):
        assert abs(mpmath.mpf(lo.value) - mpmath.mpf(hi.value)) <= lo.tail_bound + lo.tol + mpmath.mpf(2) ** -80


def test_lambert_vs_nsum():
    want = oracle(lambda: mpmath.nsum(lambda n: 1 / (n**3 * (mpmath.exp(2 * mpmath.pi * n) - 1)), [1, mpmath.inf]))
    assert abs(lambert_sum(oracle(lambda: +mpmath.pi), 3, 256).value - want) < mpmath.mpf(10) ** -70


def test_coth_sum_vs_direct():
    want = oracle(lambda: mpmath.nsum(lambda n: mpmath.coth(mpmath.pi * n) / n**5, [1, mpmath.inf]))
    res = coth_sum(1, 5, 256)
    assert abs(res.value - want) < mpmath.mpf(10) ** -70


def test_zeta3_classical_instance():
    with mpmath.workprec(320):
        direct = 7 * mpmath.pi**3 / 180 - 2 * mpmath.nsum(
            lambda n: 1 / (n**3 * (mpmath.exp(2 * mpmath.pi * n) - 1)), [1, mpmath.inf])
        assert abs(zeta_int(3, 256) - direct) < mpmath.mpf(2) ** -200


@pytest.mark.parametrize("alpha", [Fraction(1), Fraction(1, 2), Fraction(3, 1)])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_ramanujan(alpha, n):
    lhs, rhs = ramanujan_sides(alpha, n, 256)
    assert abs(lhs - rhs) < mpmath.mpf(2) ** -220 * max(1, abs(lhs))


def test_ramanujan_residual_shrinks_with_precision():
    lo = ramanujan_sides(Fraction(1, 3), 3, 80)
    hi = ramanujan_sides(Fraction(1, 3), 3, 200)
    assert abs(hi[0] - hi[1]) <= abs(lo[0] - lo[1]) + mpmath.mpf(2) ** -70


@pytest.mark.parametrize("parity,M", [("even", 1), ("even", 2), ("odd", 0), ("odd", 1), ("odd", 3)])
@pytest.mark.parametrize("form", [1, 2])
def test_coth_form(parity, M, form):
    for alpha in (Fraction(1, 2), Fraction(1), Fraction(2)):
        lhs, rhs = cor32_sides(alpha, M, parity, 256, form)
        assert abs(lhs - rhs) < mpmath.mpf(2) ** -200 * max(1, abs(lhs))


def test_coth_form_even_vanishes_at_one():
    for M in (1, 2, 3):
        lhs, rhs = cor32_sides(1, M, "even", 256)
        assert abs(lhs) < mpmath.mpf(2) ** -230 and abs(rhs) < mpmath.mpf(2) ** -230


def test_coth_form_argument_checks():
    with pytest.raises(ValueError):
        cor32_sides(1, 0, "even")
    with pytest.raises(ValueError):
        cor32_sides(-1, 1, "odd")
