"""Exact Laurent polynomials in one variable ``z`` and the four
``(z + 1/z)`` / ``(z - 1/z)`` power identities together with the alternating
binomial sums ("S-values") that reduce them to coefficient comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exactcore import binom
from .report import IdentityReport

__all__ = [
    "LaurentPoly",
    "Z",
    "lp_mul",
    "lp_pow",
    "laurent_sides",
    "check_prop21",
    "s_value",
    "s_closed_form",
    "check_s_recurrences",
]


class LaurentPoly:
    """Finitely supported map ``exponent -> Fraction``; zeros are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Fraction] = {}
        for e, v in items:
            v = Fraction(v)
            if v:
                c[int(e)] = c.get(int(e), Fraction(0)) + v
                if not c[int(e)]:
                    del c[int(e)]
        self._c = c

    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = {e: v for e, v in c.items() if v}
        return p

    @classmethod
    def monomial(cls, e: int, coeff=1) -> "LaurentPoly":
        return cls({e: coeff})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self._c)

    def degree_span(self) -> tuple[int, int] | None:
        if not self._c:
            return None
        return min(self._c), max(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "LaurentPoly":
        other = _lift(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, Fraction(0)) + v
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        return lp_mul(self, _lift(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        return lp_pow(self, e)

    def substitute_inverse(self) -> "LaurentPoly":
        """``p(z) -> p(1/z)``."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        terms = " + ".join(f"({v})*z^{e}" for e, v in sorted(self._c.items(), reverse=True))
        return f"LaurentPoly({terms})"


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot treat {type(x).__name__} as a Laurent polynomial")


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: dict[int, Fraction] = {}
    for ea, va in a._c.items():
        for eb, vb in b._c.items():
            e = ea + eb
            out[e] = out.get(e, Fraction(0)) + va * vb
    return LaurentPoly._raw(out)


def lp_pow(a: LaurentPoly, e: int) -> LaurentPoly:
    if e < 0:
        raise ValueError("lp_pow needs a nonnegative exponent")
    result = LaurentPoly({0: 1})
    base = a
    while e:
        if e & 1:
            result = lp_mul(result, base)
        e >>= 1
        if e:
            base = lp_mul(base, base)
    return result


Z = LaurentPoly({1: 1})

# ---------------------------------------------------------------------------
# The four identities


def _z_plus(m: int) -> LaurentPoly:
    return lp_pow(LaurentPoly({1: 1, -1: 1}), m)


def _z_minus(m: int) -> LaurentPoly:
    return lp_pow(LaurentPoly({1: 1, -1: -1}), m)


def _z2_minus(m: int) -> LaurentPoly:
    return lp_pow(LaurentPoly({2: 1, -2: -1}), m)


_Z2_PLUS = LaurentPoly({2: 1, -2: 1})


def laurent_sides(M: int) -> list[tuple[LaurentPoly, LaurentPoly]]:
    """Left and right sides of the four identities for a given ``M``.

    Each side is expanded from scratch so that no subexpression is shared
    between a left side and its right side.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    half = Fraction(1, 2)
    sides = []

    lhs = half * _z_plus(4 * M + 2) - half * _z_minus(4 * M + 2)
    rhs = LaurentPoly()
    for k in range(M + 1):
        w = Fraction(2 ** (4 * k) * (4 * M + 2), 2 * k + 1) * binom(M + k, 2 * k)
        rhs = rhs + w * _z2_minus(2 * (M - k))
    sides.append((lhs, rhs))

    lhs = half * _z_plus(4 * M) - half * _z_minus(4 * M)
    acc = LaurentPoly()
    for k in range(M):
        w = Fraction(2 ** (4 * k) * (M - k), 2 * k + 1) * binom(M + k, 2 * k)
        acc = acc + w * _z2_minus(2 * (M - 1 - k))
    sides.append((lhs, 4 * lp_mul(_Z2_PLUS, acc)))

    lhs = half * _z_plus(4 * M) + half * _z_minus(4 * M)
    rhs = LaurentPoly()
    for k in range(M + 1):
        w = Fraction(2 ** (4 * k) * M, M + k) * binom(M + k, 2 * k)
        rhs = rhs + w * _z2_minus(2 * (M - k))
    sides.append((lhs, rhs))

    lhs = half * _z_plus(4 * M + 2) + half * _z_minus(4 * M + 2)
    acc = LaurentPoly()
    for k in range(M + 1):
        acc = acc + (2 ** (4 * k) * binom(M + k, 2 * k)) * _z2_minus(2 * (M - k))
    sides.append((lhs, lp_mul(_Z2_PLUS, acc)))
    return sides


def check_prop21(M: int) -> IdentityReport:
    rep = IdentityReport(f"laurent_identities[M={M}]", "")
    max_deg = 0
    for idx, (lhs, rhs) in enumerate(laurent_sides(M), start=1):
        span = (lhs.degree_span() or (0, 0)) + (rhs.degree_span() or (0, 0))
        max_deg = max(max_deg, *(abs(e) for e in span))
        if lhs == rhs:
            rep.expect(True, "")
            continue
        diff = lhs - rhs
        first = min(diff.support())
        rep.expect(
            False,
            f"identity {idx}: first mismatch at z^{first}: lhs={lhs[first]} rhs={rhs[first]}",
        )
    rep.detail["max_degree"] = max_deg
    return rep


# ---------------------------------------------------------------------------
# S-values from the coefficient comparison

_FAMILIES = ("4M", "4M+2")
_PARITIES = ("even", "odd")


def _j_range(family: str, parity: str, M: int) -> range:
    if family == "4M" and parity == "odd":
        return range(0, M)
    return range(0, M + 1)


def s_value(family: str, parity: str, M: int, j: int) -> Fraction:
    """Evaluate the alternating sum ``S`` for the given family and parity.

    ``family`` is ``"4M"`` or ``"4M+2"``; ``parity`` ``"even"`` selects
    ``S_{2j}`` and ``"odd"`` selects ``S_{2j+1}``.
    """
    if family not in _FAMILIES or parity not in _PARITIES:
        raise ValueError(f"unknown S family {family!r}/{parity!r}")
    if M < 1:
        raise ValueError("M must be >= 1")
    if j not in _j_range(family, parity, M):
        raise ValueError(f"j={j} out of range for S[{family},{parity}] with M={M}")

    total = Fraction(0)
    for k in range(j + 1):
        sign = -1 if (j - k) % 2 else 1
        b = binom(M + k, 2 * k)
        if family == "4M+2" and parity == "even":
            t = Fraction(2 ** (4 * k) * (binom(2 * (M - k), j - k) - binom(2 * (M - k), j - 1 - k)) * b)
        elif family == "4M" and parity == "even":
            t = Fraction(2 ** (4 * k) * M, M + k) * binom(2 * (M - k), j - k) * b
        elif family == "4M+2":
            t = Fraction(2 ** (4 * k) * (4 * M + 2), 2 * k + 1) * binom(2 * (M - k), j - k) * b
        else:
            diff = binom(2 * (M - 1 - k), j - k) - binom(2 * (M - 1 - k), j - 1 - k)
            t = Fraction(2 ** (4 * k + 2) * (M - k), 2 * k + 1) * diff * b
        total += sign * t
    return total


def s_closed_form(family: str, parity: str, M: int, j: int) -> int:
    top = 4 * M + 2 if family == "4M+2" else 4 * M
    return binom(top, 2 * j + (parity == "odd"))


def check_s_recurrences(M: int) -> IdentityReport:
    """Check the four S-recurrences and the binomial closed forms for one ``M``."""
    rep = IdentityReport(f"s_recurrences[M={M}]", "")
    S = {
        (f, p): [s_value(f, p, M, j) for j in _j_range(f, p, M)]
        for f in _FAMILIES
        for p in _PARITIES
    }
    e2, o2 = S["4M+2", "even"], S["4M+2", "odd"]
    e0, o0 = S["4M", "even"], S["4M", "odd"]

    for (f, p), vals in S.items():
        for j, v in enumerate(vals):
            rep.expect(v == s_closed_form(f, p, M, j), f"closed form S[{f},{p}] j={j}: {v}")

    for j in range(1, M + 1):
        lhs = (
            (2 * M - 2 * j + 3) * (4 * M + 2) * j * e2[j]
            + 4 * (2 * M - 2 * j + 2) * (2 * M - 2 * j + 1) * (3 * M - j + 2) * o2[j - 1]
            - 2 * (2 * M - 2 * j + 2) * (4 * M + 1) * (4 * M + 2) * o0[j - 1]
        )
        rhs = -(2 * M - 2 * j + 1) * (2 * M - j + 2) * (4 * M + 2) * e2[j - 1]
        rep.expect(lhs == rhs, f"recurrence 1 (4M+2, even) j={j}")

        lhs = j * e0[j] - 2 * M * o0[j - 1]
        rep.expect(lhs == -(2 * M - j + 1) * e0[j - 1], f"recurrence 2 (4M, even) j={j}")

        lhs = (2 * j + 1) * o2[j] - (4 * M + 2) * e2[j]
        rep.expect(lhs == -(4 * M - 2 * j + 3) * o2[j - 1], f"recurrence 3 (4M+2, odd) j={j}")

    for j in range(1, M):
        lhs = (2 * M + 1) * o0[j] - (2 * M - 2 * j) * o2[j]
        rep.expect(lhs == (2 * M + 1) * o0[j - 1], f"recurrence 4 (4M, odd) j={j}")
    return rep
