"""Arbitrary-precision evaluation of zeta values and the hyperbolic series.

Every function takes its precision ``p`` (bits) explicitly and works in a
private mpmath context at ``p + GUARD_BITS``; nothing touches the global
``mpmath.mp`` state.  Returned numbers are mpf values of the context for
``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext

from .exactcore import bernoulli, factorial

__all__ = [
    "DEFAULT_PRECISION",
    "GUARD_BITS",
    "context",
    "to_mpf",
    "SeriesResult",
    "pi",
    "zeta_even",
    "zeta_int",
    "zeta_int_bounded",
    "hyperbolic_sum",
    "s_sum",
    "lambert_sum",
    "coth_sum",
    "ramanujan_sides",
    "cor32_sides",
]

DEFAULT_PRECISION = 256
GUARD_BITS = 32
MAX_TERMS = 2_000_000


@lru_cache(maxsize=None)
def context(p: int) -> MPContext:
    """A private mpmath context fixed at ``p`` bits.  Never mutate its precision."""
    if p < 2:
        raise ValueError("precision must be at least 2 bits")
    ctx = MPContext()
    ctx.prec = p
    return ctx


def to_mpf(ctx: MPContext, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if hasattr(x, "_mpf_"):
        return ctx.mpf(x)
    return ctx.mpf(x)


@dataclass(frozen=True)
class SeriesResult:
    """Truncated series value; the full sum lies within ``tail_bound`` of ``value``
    up to rounding in the summation itself."""

    value: object
    terms_used: int
    tail_bound: object
    tol: object = None

    @property
    def converged(self) -> bool:
        return self.tol is None or self.tail_bound <= self.tol


def pi(p: int):
    return context(p).pi


def zeta_even(s: int, p: int = DEFAULT_PRECISION):
    """``zeta(2n) = (-1)^(n-1) B_{2n} (2 pi)^(2n) / (2 (2n)!)`` for ``s = 2n``."""
    if s < 2 or s % 2:
        raise ValueError(f"zeta_even needs an even argument >= 2, got {s}")
    n = s // 2
    wctx = context(p + GUARD_BITS)
    q = Fraction((-1) ** (n - 1)) * bernoulli(2 * n) / (2 * factorial(2 * n))
    return context(p).mpf(to_mpf(wctx, q) * (2 * wctx.pi) ** s)


@lru_cache(maxsize=4096)
def zeta_int_bounded(s: int, p: int = DEFAULT_PRECISION):
    """``(zeta(s), remainder_bound)`` by Euler-Maclaurin summation.

    ``n0`` terms are summed directly, then the integral, the half end term
    and Bernoulli corrections are added until the first omitted correction,
    which bounds the remainder for real ``s > 1``, drops below
    ``2^-(p + GUARD_BITS)``.
    """
    if s < 2:
        raise ValueError(f"zeta_int needs s >= 2, got {s}")
    wp = p + GUARD_BITS
    ctx = context(wp)
    n0 = max(8, p // 4)
    total = ctx.fsum(ctx.mpf(n) ** (-s) for n in range(1, n0))
    N = ctx.mpf(n0)
    total += N ** (1 - s) / (s - 1) + N ** (-s) / 2
    eps = ctx.ldexp(ctx.mpf(1), -wp)
    # rising factorial s (s+1) ... (s+2k-2), updated incrementally
    rising = ctx.mpf(s)
    power = N ** (-s - 1)
    k = 1
    while True:
        term = to_mpf(ctx, bernoulli(2 * k) / factorial(2 * k)) * rising * power
        if abs(term) < eps * abs(total):
            bound = abs(term)
            break
        total += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= N * N
        k += 1
        if k > 10 * wp:
            raise ArithmeticError(f"Euler-Maclaurin failed to converge for s={s}")
    out = context(p)
    return out.mpf(total), out.mpf(bound)


def zeta_int(s: int, p: int = DEFAULT_PRECISION):
    """``zeta(s)`` for integer ``s >= 2``."""
    return zeta_int_bounded(s, p)[0]


def _default_tol(ctx: MPContext, p: int):
    return ctx.ldexp(ctx.mpf(1), -p - 4)


def hyperbolic_sum(alpha, K: int, M: int, p: int = DEFAULT_PRECISION, tol=None,
                   max_terms: int = MAX_TERMS) -> SeriesResult:
    """``alpha^-K sum_n n^-(K+1) sinh(alpha n)^(1+K) / cosh(alpha n)^(2M+1+K)``.

    Terms are formed from ``e = exp(-2 alpha n)`` as
    ``2^(2M) e^M (1-e)^(1+K) / (1+e)^(2M+1+K)``, which is bounded by
    ``2^(2M) e^M``; the tail after ``n`` terms is therefore at most
    ``alpha^-K 2^(2M) exp(-2 M alpha (n+1)) / ((n+1)^(K+1) (1 - exp(-2 M alpha)))``.
    """
    if K < 0 or M < 1:
        raise ValueError("need K >= 0 and M >= 1")
    wp = p + GUARD_BITS
    ctx = context(wp)
    a = to_mpf(ctx, alpha)
    if not a > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    tol = _default_tol(ctx, p) if tol is None else to_mpf(ctx, tol)
    if not tol > 0:
        raise ValueError("tol must be positive")
    front = ctx.mpf(4) ** M / a**K
    denom = 1 - ctx.exp(-2 * M * a)
    total = ctx.mpf(0)
    n = 0
    while True:
        n += 1
        y = 2 * a * n
        e = ctx.exp(-y)
        one_minus = -ctx.expm1(-y)
        total += e**M * one_minus ** (1 + K) / ((1 + e) ** (2 * M + 1 + K) * ctx.mpf(n) ** (K + 1))
        tail = front * ctx.exp(-2 * M * a * (n + 1)) / (ctx.mpf(n + 1) ** (K + 1) * denom)
        if tail <= tol or n >= max_terms:
            break
    out = context(p)
    return SeriesResult(out.mpf(total * ctx.mpf(4) ** M / a**K), n, out.mpf(tail), out.mpf(tol))


def s_sum(alpha, N: int, p: int = DEFAULT_PRECISION, tol=None, max_terms: int = MAX_TERMS) -> SeriesResult:
    """``sum_n (1/n) sinh(alpha n) / cosh(alpha n)^(2N+1)``."""
    return hyperbolic_sum(alpha, 0, N, p, tol, max_terms)


def lambert_sum(a, s: int, p: int = DEFAULT_PRECISION, tol=None, max_terms: int = MAX_TERMS) -> SeriesResult:
    """``sum_m 1 / (m^s (exp(2 a m) - 1))`` for ``a > 0``.

    With ``q = exp(-2a)`` each term is at most ``q^m / (m^s (1 - q))``, so the
    tail after ``n`` terms is at most ``q^(n+1) / ((n+1)^s (1-q)^2)``.
    """
    wp = p + GUARD_BITS
    ctx = context(wp)
    a = to_mpf(ctx, a)
    if not a > 0:
        raise ValueError("lambert_sum needs a > 0")
    tol = _default_tol(ctx, p) if tol is None else to_mpf(ctx, tol)
    q = ctx.exp(-2 * a)
    total = ctx.mpf(0)
    n = 0
    while True:
        n += 1
        total += 1 / (ctx.mpf(n) ** s * ctx.expm1(2 * a * n))
        tail = q ** (n + 1) / (ctx.mpf(n + 1) ** s * (1 - q) ** 2)
        if tail <= tol or n >= max_terms:
            break
    out = context(p)
    return SeriesResult(out.mpf(total), n, out.mpf(tail), out.mpf(tol))


def coth_sum(beta, s: int, p: int = DEFAULT_PRECISION, tol=None) -> SeriesResult:
    """``sum_n coth(beta pi n) / n^s = zeta(s) + 2 sum_n 1/(n^s (exp(2 beta pi n) - 1))``."""
    if s < 2:
        raise ValueError("coth_sum needs s >= 2")
    wp = p + GUARD_BITS
    ctx = context(wp)
    b = to_mpf(ctx, beta)
    if not b > 0:
        raise ValueError("coth_sum needs beta > 0")
    corr = lambert_sum(b * ctx.pi, s, wp, tol)
    z = to_mpf(ctx, zeta_int(s, wp))
    out = context(p)
    return SeriesResult(out.mpf(z + 2 * corr.value), corr.terms_used, out.mpf(2 * corr.tail_bound), corr.tol)


def ramanujan_sides(alpha, n: int, p: int = DEFAULT_PRECISION):
    """Both sides of Ramanujan's formula for ``zeta(2n+1)`` with ``beta = pi^2/alpha``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    wp = p + GUARD_BITS
    ctx = context(wp)
    a = to_mpf(ctx, alpha)
    if not a > 0:
        raise ValueError("alpha must be positive")
    b = ctx.pi**2 / a
    s = 2 * n + 1
    z = to_mpf(ctx, zeta_int(s, wp))
    la = to_mpf(ctx, lambert_sum(a, s, wp).value)
    lb = to_mpf(ctx, lambert_sum(b, s, wp).value)
    lhs = (z / 2 + la) / (4 * a) ** n - (z / 2 + lb) / (-4 * b) ** n
    rhs = ctx.mpf(0)
    for k in range(n + 2):
        q = Fraction((-1) ** (k - 1)) * bernoulli(2 * k) * bernoulli(2 * n - 2 * k + 2)
        q /= factorial(2 * k) * factorial(2 * n - 2 * k + 2)
        rhs += to_mpf(ctx, q) * a ** (n - k + 1) * b**k
    out = context(p)
    return out.mpf(lhs), out.mpf(rhs)


def cor32_sides(alpha, M: int, parity: str, p: int = DEFAULT_PRECISION, form: int = 1):
    """Both sides of the coth-series form of Ramanujan's formula.

    ``parity="even"`` is the exponent ``4M+1`` family (``M >= 1``),
    ``parity="odd"`` the exponent ``4M+3`` family (``M >= 0``).  ``form``
    selects which of the two printed right-hand sides to evaluate.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if form not in (1, 2):
        raise ValueError("form must be 1 or 2")
    if (parity == "even" and M < 1) or M < 0:
        raise ValueError(f"M={M} not admissible for the {parity} family")
    wp = p + GUARD_BITS
    ctx = context(wp)
    a = to_mpf(ctx, alpha)
    if not a > 0:
        raise ValueError("alpha must be positive")

    def ze(k):
        return to_mpf(ctx, zeta_even(k, wp))

    pi_ = ctx.pi
    if parity == "even":
        s = 4 * M + 1
        top = 4 * M + 2
        lhs = pi_ * a ** (-2 * M) * to_mpf(ctx, coth_sum(a, s, wp).value)
        lhs -= pi_ * a ** (2 * M) * to_mpf(ctx, coth_sum(1 / a, s, wp).value)
        if form == 1:
            rhs = -ze(top) * (a ** (2 * M + 1) - a ** (-2 * M - 1))
            for j in range(1, M + 1):
                e = 2 * M + 1 - 2 * j
                rhs += 2 * (-1) ** j * ze(2 * j) * ze(top - 2 * j) * (a**e - a ** (-e))
        else:
            rhs = ze(top) * a ** (-2 * M - 1) - ze(top) * a ** (2 * M + 1)
            for k in range(1, 2 * M + 1):
                rhs -= 2 * (-1) ** k * ze(2 * k) * ze(top - 2 * k) * a ** (-(2 * (M - k) + 1))
    else:
        s = 4 * M + 3
        top = 4 * M + 4
        lhs = pi_ * a ** (-2 * M - 1) * to_mpf(ctx, coth_sum(a, s, wp).value)
        lhs += pi_ * a ** (2 * M + 1) * to_mpf(ctx, coth_sum(1 / a, s, wp).value)
        if form == 1:
            rhs = ze(top) * (a ** (2 * M + 2) + a ** (-2 * M - 2))
            for j in range(1, M + 1):
                e = 2 * (M + 1 - j)
                rhs -= 2 * (-1) ** j * ze(2 * j) * ze(top - 2 * j) * (a**e + a ** (-e))
            rhs += 2 * (-1) ** M * ze(2 * M + 2) ** 2
        else:
            rhs = ze(top) * a ** (-2 * M - 2) + ze(top) * a ** (2 * M + 2)
            for k in range(1, 2 * M + 2):
                rhs -= 2 * (-1) ** k * ze(2 * k) * ze(top - 2 * k) * a ** (-2 * (M - k + 1))
    out = context(p)
    return out.mpf(lhs), out.mpf(rhs)
