"""Polynomials in a formal variable ``c`` obeying ``c' = 1 - c**2``.

The same rule holds for ``c = coth(x)`` and for ``c = tanh(x)``, so one
algebra serves both.  Two bases of odd polynomials are used:

* coth kind: ``c (c**2 - 1)**k``, i.e. ``cosh(x) / sinh(x)**(2k+1)``
* tanh kind: ``t (1 - t**2)**k``, i.e. ``sinh(x) / cosh(x)**(2k+1)``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactcore import binom
from .report import IdentityReport

__all__ = [
    "Poly",
    "BasisVector",
    "derive",
    "derive_n",
    "basis_to_poly",
    "poly_to_basis",
    "verify_lemma22",
    "tanh_family_sides",
]

COTH = "coth"
TANH = "tanh"


class Poly:
    """Polynomial in one variable with Fraction coefficients (sparse)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] = None):
        c = {}
        for e, v in (coeffs or {}).items():
            if e < 0:
                raise ValueError("negative exponent in Poly")
            v = Fraction(v)
            if v:
                c[e] = v
        self._c = c

    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._c = {e: v for e, v in c.items() if v}
        return p

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    @property
    def is_odd(self) -> bool:
        return all(e % 2 for e in self._c)

    @property
    def is_even(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly({0: other})
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "Poly") -> "Poly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, Fraction(0)) + v
        return Poly._raw(c)

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly._raw({e: v * other for e, v in self._c.items()})
        out: dict[int, Fraction] = {}
        for ea, va in self._c.items():
            for eb, vb in other._c.items():
                out[ea + eb] = out.get(ea + eb, Fraction(0)) + va * vb
        return Poly._raw(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._c:
            return "Poly(0)"
        return "Poly(" + " + ".join(f"({v})*c^{e}" for e, v in sorted(self._c.items(), reverse=True)) + ")"


@dataclass(frozen=True)
class BasisVector:
    kind: str
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_poly(self) -> Poly:
        acc = Poly()
        for k, b in enumerate(self.coeffs):
            if b:
                acc = acc + basis_to_poly(k, self.kind) * b
        return acc


def derive(p: Poly) -> Poly:
    """Formal d/dx under ``c' = 1 - c**2``: ``c**m -> m c**(m-1) - m c**(m+1)``."""
    out: dict[int, Fraction] = {}
    for m, v in p._c.items():
        if m == 0:
            continue
        out[m - 1] = out.get(m - 1, Fraction(0)) + m * v
        out[m + 1] = out.get(m + 1, Fraction(0)) - m * v
    return Poly._raw(out)


def derive_n(p: Poly, n: int) -> Poly:
    for _ in range(n):
        p = derive(p)
    return p


def basis_to_poly(k: int, kind: str = COTH) -> Poly:
    if k < 0:
        raise ValueError("basis index must be >= 0")
    # c (c^2 - 1)^k = sum_i binom(k, i) (-1)^(k-i) c^(2i+1); tanh kind flips by (-1)^k
    flip = 1 if kind == COTH else (-1) ** k
    if kind not in (COTH, TANH):
        raise ValueError(f"unknown basis kind {kind!r}")
    return Poly._raw({2 * i + 1: Fraction(flip * (-1) ** (k - i) * binom(k, i)) for i in range(k + 1)})


def poly_to_basis(p: Poly, kind: str = COTH) -> BasisVector:
    """Coordinates of an odd polynomial in the chosen basis.

    Solved from the top degree down; basis element ``k`` has degree
    ``2k+1`` with leading coefficient 1 (coth) or ``(-1)**k`` (tanh).
    """
    if not p.is_odd:
        raise ValueError("poly_to_basis needs an odd polynomial")
    if kind not in (COTH, TANH):
        raise ValueError(f"unknown basis kind {kind!r}")
    rest = dict(p._c)
    top = (p.degree - 1) // 2 if p._c else -1
    out = [Fraction(0)] * (top + 1)
    for k in range(top, -1, -1):
        lead = rest.get(2 * k + 1, Fraction(0))
        if not lead:
            continue
        b = lead if kind == COTH or k % 2 == 0 else -lead
        out[k] = b
        for e, v in basis_to_poly(k, kind)._c.items():
            rest[e] = rest.get(e, Fraction(0)) - b * v
    return BasisVector(kind, tuple(out))


def verify_lemma22(n_max: int, c_table) -> IdentityReport:
    """Compare the formal ``2n``-th derivative of ``c`` with ``sum_k c[n][k] basis(k)``.

    ``c_table[n][k]`` must hold the coefficient table for ``1 <= k <= n <= n_max``.
    The basis coordinates are also extracted independently by
    :func:`poly_to_basis` and compared entry by entry.
    """
    rep = IdentityReport(f"even_derivatives[n<={n_max}]", "definition_of_c_n_k")
    p = Poly({1: 1})
    for n in range(1, n_max + 1):
        p = derive(derive(p))
        rep.expect(p.is_odd, f"n={n}: derivative not odd")
        expected = Poly()
        for k in range(1, n + 1):
            expected = expected + basis_to_poly(k, COTH) * c_table[n][k]
        rep.expect(p == expected, f"n={n}: polynomial mismatch")
        coords = poly_to_basis(p, COTH)
        for k in range(0, max(len(coords), n + 1)):
            want = c_table[n][k] if 1 <= k <= n else 0
            rep.expect(coords[k] == want, f"n={n} k={k}: extracted {coords[k]} != table {want}")
    return rep


@dataclass(frozen=True)
class TanhFamily:
    """Both sides of a differentiated tanh identity, in tanh-basis coordinates.

    ``lhs[k]`` multiplies ``sinh(x)/cosh(x)**(2k+1)`` and ``rhs[j]`` multiplies
    ``sinh(2x)/cosh(2x)**(2j+1)``.  The left side is an infinite series cut
    after ``k_max`` source terms.
    """

    N: int
    k_max: int
    lhs: BasisVector
    rhs: BasisVector


def tanh_family_sides(N: int, k_max: int) -> TanhFamily:
    """Differentiate ``sum_k k(k+1)/2^k T_{k+1}(x) = 4 T_1(2x)`` ``2N`` times.

    Here ``T_k(x) = sinh(x)/cosh(x)**(2k+1)``.  The source series is cut
    at ``k = k_max``.  On the right, ``u = tanh(2x)`` and ``d/dx = 2 d/du``
    under the same derivation rule, so each derivative carries a factor 2.
    """
    if N < 0 or k_max < 1:
        raise ValueError("need N >= 0 and k_max >= 1")
    lhs = Poly()
    for k in range(1, k_max + 1):
        lhs = lhs + basis_to_poly(k + 1, TANH) * Fraction(k * (k + 1), 2**k)
    lhs = derive_n(lhs, 2 * N)
    rhs = derive_n(basis_to_poly(1, TANH) * 4, 2 * N) * 2 ** (2 * N)
    return TanhFamily(N, k_max, poly_to_basis(lhs, TANH), poly_to_basis(rhs, TANH))
