from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from zetarecur.coeffs import build_tables, c_closed
from zetarecur.cothalg import (
    Poly,
    basis_to_poly,
    derive,
    derive_n,
    poly_to_basis,
    tanh_family_sides,
    verify_lemma22,
)

c = Poly({1: 1})


def test_derive_examples():
    assert derive(c) == Poly({0: 1, 2: -1})
    assert derive(Poly({2: 1})) == Poly({1: 2, 3: -2})
    assert derive(derive(c)) == Poly({3: 2, 1: -2})


def test_basis_examples():
    assert basis_to_poly(0, "coth") == c
    assert basis_to_poly(1, "coth") == Poly({3: 1, 1: -1})
    assert basis_to_poly(2, "coth") == Poly({5: 1, 3: -2, 1: 1})
    assert basis_to_poly(1, "tanh") == Poly({1: 1, 3: -1})


def test_poly_to_basis_examples():
    assert poly_to_basis(Poly({3: 1}), "coth").coeffs == (1, 1)
    assert poly_to_basis(Poly({3: 1}), "tanh").coeffs == (1, -1)
    with pytest.raises(ValueError):
        poly_to_basis(Poly({2: 1}))


@pytest.mark.parametrize("kind", ["coth", "tanh"])
def test_basis_round_trip(kind):
    for k in range(31):
        v = poly_to_basis(basis_to_poly(k, kind), kind)
        assert v.coeffs == tuple(Fraction(int(i == k)) for i in range(k + 1))


polys = st.dictionaries(st.integers(0, 7), st.integers(-5, 5), max_size=4).map(Poly)


@given(polys, polys)
def test_derive_is_a_derivation(p, q):
    assert derive(p * q) == derive(p) * q + p * derive(q)


def test_parity_alternates():
    p = c
    for n in range(1, 41):
        p = derive(p)
        assert (p.is_even if n % 2 else p.is_odd)


@pytest.mark.parametrize("kind,sign", [("coth", 1), ("tanh", -1)])
def test_second_derivative_rule(kind, sign):
    for k in range(21):
        lhs = derive(derive(basis_to_poly(k, kind)))
        rhs = basis_to_poly(k, kind) * (4 * k * k) + basis_to_poly(k + 1, kind) * (sign * (2 * k + 2) * (2 * k + 1))
        assert lhs == rhs


def test_even_derivatives_small():
    d2 = derive_n(c, 2)
    assert d2 == basis_to_poly(1) * 2
    d4 = derive_n(c, 4)
    assert d4 == Poly({5: 24, 3: -40, 1: 16})
    assert poly_to_basis(d4).coeffs == (0, 8, 24)


def test_even_derivatives_against_closed_form():
    t = build_tables(20)
    rep = verify_lemma22(20, t.c)
    assert rep.ok, rep.failures[:3]
    p = c
    for n in range(1, 21):
        p = derive_n(p, 2)
        coords = poly_to_basis(p)
        assert coords[n] == factorial(2 * n)
        assert all(coords[k] == c_closed(n, k) for k in range(1, n + 1))


def test_even_derivatives_catches_bad_table():
    t = build_tables(5)
    bad = [row[:] for row in t.c]
    bad[3][2] += 1
    rep = verify_lemma22(5, bad)
    assert not rep.ok
    assert any("n=3" in f for f in rep.failures)


def test_tanh_family_base_case():
    fam = tanh_family_sides(0, 10)
    assert fam.lhs[2] == 1  # k = 1 term: 1*2/2 * t(1-t^2)^2
    assert fam.lhs[3] == Fraction(3, 2)
    assert fam.lhs[0] == fam.lhs[1] == 0
    assert fam.rhs.coeffs == (0, 4)


def test_tanh_family_second_derivative_matches_basis_rule():
    fam0 = tanh_family_sides(0, 15)
    fam1 = tanh_family_sides(1, 15)
    expect = [Fraction(0)] * (len(fam0.lhs) + 1)
    for k, b in enumerate(fam0.lhs.coeffs):
        expect[k] += 4 * k * k * b
        expect[k + 1] -= (2 * k + 2) * (2 * k + 1) * b
    assert fam1.lhs.coeffs == tuple(expect[: len(fam1.lhs)])
    # RHS: 4 * 2^2 * D^2 T_1 = 16 (4 T_1 - 12 T_2)
    assert fam1.rhs.coeffs == (0, 64, -192)


def test_tanh_family_parity():
    fam = tanh_family_sides(1, 5)
    once = derive(fam.lhs.to_poly())
    assert once.is_even
    assert derive(once).is_odd
