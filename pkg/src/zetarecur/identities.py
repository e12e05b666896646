"""Numerical certification of the limit identity and the relations built on it.

The limit value for ``N`` is ``sum_k r_k(N) zeta(2k+1) / pi^(2k)``, evaluated
from the exact coefficients with only the zeta values and pi inexact.

At finite ``alpha`` the series ``sum_n (1/n) g(alpha n)`` (``g`` odd, with
``g'(0) = 1``) differs from its limit by ``-alpha/2 + O(exp(-pi^2/alpha))``:
the linear term is the missing half-weight ``n = 0`` term of the sum over all
integers, and every higher power of ``alpha`` cancels against a trivial zero
of zeta.  Certificates therefore report the raw residual and the residual of
``value + alpha/2``; only the latter can shrink to rounding level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .coeffs import build_h, limit_coeffs
from .cothalg import tanh_family_sides
from .exactcore import binom, factorial
from .report import NumericCheck
from .zetanum import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    context,
    hyperbolic_sum,
    to_mpf,
    zeta_int,
)

__all__ = [
    "DEFAULT_SCHEDULE",
    "LimitCertificate",
    "KCombo",
    "RecurrenceReport",
    "TanhRelation",
    "zeta_combo_value",
    "limit_value",
    "verify_limit",
    "klimit_combo",
    "klimit_value",
    "verify_klimit",
    "recurrence_coefficients",
    "verify_recurrence_cor41",
    "verify_tanh_ids",
    "verify_coth_identities",
    "generate_tanh_recurrence",
    "schedule_down_to",
]

DEFAULT_SCHEDULE: tuple[Fraction, ...] = tuple(Fraction(1, 2**j) for j in range(5))


def schedule_down_to(alpha_min) -> tuple[Fraction, ...]:
    """Halving schedule ``1, 1/2, 1/4, ...`` stopping at the last value ``>= alpha_min``."""
    alpha_min = Fraction(alpha_min)
    if alpha_min <= 0 or alpha_min > 1:
        raise ValueError("alpha_min must lie in (0, 1]")
    out = [Fraction(1)]
    while out[-1] / 2 >= alpha_min:
        out.append(out[-1] / 2)
    return tuple(out)


def _as_tol(ctx, tol):
    if isinstance(tol, str):
        return ctx.mpf(tol)
    return to_mpf(ctx, tol)


def zeta_combo_value(coeffs: dict[int, Fraction], p: int = DEFAULT_PRECISION):
    """``sum_k coeffs[k] zeta(2k+1) / pi^(2k)``."""
    ctx = context(p + GUARD_BITS)
    pi2 = ctx.pi**2
    total = ctx.mpf(0)
    for k, c in coeffs.items():
        if c:
            total += to_mpf(ctx, c) * to_mpf(ctx, zeta_int(2 * k + 1, p + GUARD_BITS)) / pi2**k
    return context(p).mpf(total)


def limit_value(N: int, p: int = DEFAULT_PRECISION):
    r = limit_coeffs(N).r
    return zeta_combo_value({k: r[k - 1] for k in range(1, N + 1)}, p)


# ---------------------------------------------------------------------------
# limit certificates


@dataclass
class LimitCertificate:
    N: int
    K: int
    schedule: tuple
    values: list
    raw_residuals: list
    residuals: list
    tail_bounds: list
    terms_used: list
    target: object
    tol: object
    floor: object
    decay_slope: float | None
    decreasing: bool

    @property
    def passed(self) -> bool:
        return bool(self.residuals) and self.residuals[-1] < self.tol and self.decreasing


def _check_schedule(schedule: Sequence) -> tuple:
    sched = tuple(schedule)
    if not sched:
        raise ValueError("empty alpha schedule")
    for a, b in zip(sched, sched[1:]):
        if not b < a:
            raise ValueError("alpha schedule must be strictly decreasing")
    if not sched[-1] > 0:
        raise ValueError("alpha schedule must be positive")
    return sched


def _certify(N: int, K: int, target, schedule, p: int, tol) -> LimitCertificate:
    sched = _check_schedule(DEFAULT_SCHEDULE if schedule is None else schedule)
    ctx = context(p + GUARD_BITS)
    tol = _as_tol(ctx, tol)
    floor = ctx.ldexp(ctx.mpf(1), -(p - 16))
    target_w = to_mpf(ctx, target)
    values, raw, corrected, tails, terms = [], [], [], [], []
    for alpha in sched:
        a = to_mpf(ctx, alpha)
        res = hyperbolic_sum(a, K, N, p + GUARD_BITS)
        v = to_mpf(ctx, res.value)
        values.append(context(p).mpf(v))
        raw.append(context(p).mpf(abs(v - target_w)))
        corrected.append(context(p).mpf(abs(v + a / 2 - target_w) + res.tail_bound))
        tails.append(res.tail_bound)
        terms.append(res.terms_used)

    decreasing = all(b < a or (a < floor and b < floor) for a, b in zip(corrected, corrected[1:]))
    pts = [(1 / float(to_mpf(ctx, a)), math.log(float(r)))
           for a, r in zip(sched, corrected) if r > floor]
    slope = None
    if len(pts) >= 2:
        mx = sum(x for x, _ in pts) / len(pts)
        my = sum(y for _, y in pts) / len(pts)
        sxx = sum((x - mx) ** 2 for x, _ in pts)
        slope = sum((x - mx) * (y - my) for x, y in pts) / sxx
    return LimitCertificate(
        N=N, K=K, schedule=sched, values=values, raw_residuals=raw, residuals=corrected,
        tail_bounds=tails, terms_used=terms, target=context(p).mpf(target_w), tol=tol,
        floor=floor, decay_slope=slope, decreasing=decreasing,
    )


def verify_limit(N: int, schedule: Sequence | None = None, p: int = DEFAULT_PRECISION,
                 tol="1e-12") -> LimitCertificate:
    """Certify ``lim_{alpha->0+} s_sum(alpha, N)`` against the exact coefficient formula.

    The reported ``residuals`` include the series tail bound.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    return _certify(N, 0, limit_value(N, p + GUARD_BITS), schedule, p, tol)


# ---------------------------------------------------------------------------
# K-weighted limits


@dataclass(frozen=True)
class KCombo:
    """``weights[m]`` multiplies the base limit for ``m``; ``zeta_coeffs[k]``
    multiplies ``zeta(2k+1) / pi^(2k)``."""

    K: int
    M: int
    weights: dict[int, Fraction]
    zeta_coeffs: dict[int, Fraction]


@lru_cache(maxsize=None)
def _weights(K: int, M: int) -> tuple[tuple[int, Fraction], ...]:
    if K == 0:
        return ((M, Fraction(1)),)
    out: dict[int, Fraction] = {}
    for m, w in _weights(K - 1, M):
        out[m] = out.get(m, Fraction(0)) - Fraction(2 * M, K) * w
    for m, w in _weights(K - 1, M + 1):
        out[m] = out.get(m, Fraction(0)) + Fraction(K + 2 * M + 1, K) * w
    return tuple(sorted((m, w) for m, w in out.items() if w))


def klimit_combo(K: int, M: int) -> KCombo:
    """Unroll ``L(K, M) = -(2M/K) L(K-1, M) + ((K+2M+1)/K) L(K-1, M+1)``."""
    if K < 0 or M < 1:
        raise ValueError("need K >= 0 and M >= 1")
    weights = dict(_weights(K, M))
    zc: dict[int, Fraction] = {}
    for m, w in weights.items():
        for k, r in enumerate(limit_coeffs(m).r, start=1):
            zc[k] = zc.get(k, Fraction(0)) + w * r
    return KCombo(K, M, weights, {k: v for k, v in sorted(zc.items()) if v})


def klimit_value(K: int, M: int, p: int = DEFAULT_PRECISION):
    return zeta_combo_value(klimit_combo(K, M).zeta_coeffs, p)


def verify_klimit(K: int, M: int, schedule: Sequence | None = None, p: int = DEFAULT_PRECISION,
                  tol="1e-12") -> LimitCertificate:
    return _certify(M, K, klimit_value(K, M, p + GUARD_BITS), schedule, p, tol)


# ---------------------------------------------------------------------------
# the zeta(3) recurrence built from the differentiated tanh identity


def _inner_weight(n: int) -> Fraction:
    return Fraction(n * 2**n, (n + 1) * binom(2 * n + 2, n + 1))


def recurrence_coefficients(J: int, n_budget: int) -> list[Fraction]:
    """Left-side coefficients ``R_j`` of ``zeta(2j+1) / pi^(2j)``, ``j = 1..J``.

    ``R_j = 4 (2j)! (2 - 4^-j) sum_{n >= max(1, j-1)} w_n h_{j,n+1}`` with
    ``w_n = n 2^n / ((n+1) binom(2n+2, n+1))``, the inner sum cut at ``n_budget``.
    For ``j = 1`` this is ``14 sum_n w_n``.
    """
    if J < 1 or n_budget < 1:
        raise ValueError("need J >= 1 and n_budget >= 1")
    h = build_h(n_budget + 1, J)
    w = [Fraction(0)] + [_inner_weight(n) for n in range(1, n_budget + 1)]
    out = []
    for j in range(1, J + 1):
        inner = sum((w[n] * h[j][n + 1] for n in range(max(1, j - 1), n_budget + 1)), Fraction(0))
        out.append(4 * factorial(2 * j) * (2 - Fraction(1, 4**j)) * inner)
    return out


@dataclass
class RecurrenceReport:
    J: int
    n_budget: int
    coefficients: list[Fraction]
    lhs: object
    rhs: object
    residual: object
    inner_tail_bound: object
    outer_tail_bound: object
    outer_tail_estimate: object
    tol: object

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def _weight_tail(n_budget: int, ctx):
    # w_{n+1}/w_n = (n+1)^2 / (n (2n+3)) decreases towards 1/2
    n = n_budget + 1
    rho = Fraction((n + 1) ** 2, n * (2 * n + 3))
    return to_mpf(ctx, _inner_weight(n) / (1 - rho))


def verify_recurrence_cor41(J: int = 25, n_budget: int = 200, p: int = DEFAULT_PRECISION,
                            tol="1e-10") -> RecurrenceReport:
    """Evaluate the truncated left side and compare with ``28 zeta(3) / pi^2``.

    ``inner_tail_bound`` is rigorous, from ``h_{j,n} <= pi^(2j-2) / (2j-1)!``.
    ``outer_tail_bound`` applies the same bound to every ``j > J`` and is
    loose; ``outer_tail_estimate`` extrapolates the observed geometric decay
    of the last two terms.
    """
    wp = p + GUARD_BITS
    ctx = context(wp)
    tol = _as_tol(ctx, tol)
    coeffs = recurrence_coefficients(J, n_budget)
    pi2 = ctx.pi**2
    terms = [to_mpf(ctx, c) * to_mpf(ctx, zeta_int(2 * j + 1, wp)) / pi2**j
             for j, c in enumerate(coeffs, start=1)]
    lhs = ctx.fsum(terms)
    rhs = 28 * to_mpf(ctx, zeta_int(3, wp)) / pi2

    # per-j factor 4 (2j)! (2 - 4^-j) zeta(2j+1) pi^-2j * pi^(2j-2)/(2j-1)! <= 16 j zeta(3) / pi^2
    z3 = to_mpf(ctx, zeta_int(3, wp))
    inner = _weight_tail(n_budget, ctx) * sum(16 * j for j in range(1, J + 1)) * z3 / pi2
    outer = ctx.mpf(0)
    j = J + 1
    while True:
        piece = 16 * j * z3 / pi2 * _weight_tail(max(1, j - 2), ctx)
        outer += piece
        if piece < outer * ctx.ldexp(1, -wp) or j > J + 4 * wp:
            break
        j += 1
    if len(terms) >= 2 and terms[-2] > 0 and terms[-1] < terms[-2]:
        rho = terms[-1] / terms[-2]
        estimate = terms[-1] * rho / (1 - rho)
    else:
        estimate = ctx.inf
    out = context(p)
    return RecurrenceReport(
        J=J, n_budget=n_budget, coefficients=coeffs, lhs=out.mpf(lhs), rhs=out.mpf(rhs),
        residual=out.mpf(abs(lhs - rhs)), inner_tail_bound=out.mpf(inner),
        outer_tail_bound=out.mpf(outer), outer_tail_estimate=out.mpf(estimate), tol=tol,
    )


# ---------------------------------------------------------------------------
# pointwise hyperbolic identities


def verify_tanh_ids(points: Iterable, p: int = DEFAULT_PRECISION, tol=None) -> list[NumericCheck]:
    """Pointwise check of the geometric tanh identity and its second derivative.

    With ``r = 1/(2 cosh(x)^2) <= 1/2`` the terms are ``tanh(x) r^k`` and
    ``k (k+1) tanh(x) sech(x)^2 r^k``; tails are bounded geometrically.
    """
    wp = p + GUARD_BITS
    ctx = context(wp)
    tol = ctx.ldexp(1, -(p - 16)) if tol is None else _as_tol(ctx, tol)
    eps = ctx.ldexp(1, -wp)
    checks = []
    for x in points:
        x = to_mpf(ctx, x)
        if not x > 0:
            raise ValueError("points must be positive")
        t, ch = ctx.tanh(x), ctx.cosh(x)
        r = 1 / (2 * ch**2)

        s, term, k = ctx.mpf(0), t, 0
        while True:
            s += term
            k += 1
            term *= r
            tail = term / (1 - r)
            if tail < eps:
                break
        res = abs(s - ctx.tanh(2 * x))
        checks.append(NumericCheck(f"id_tanh[x={ctx.nstr(x, 8)}]", "id_tanh", context(p).mpf(res),
                                   tol, context(p).mpf(tail), k))

        sech2 = 1 / ch**2
        s2, k = ctx.mpf(0), 0
        while True:
            k += 1
            s2 += k * (k + 1) * t * sech2 * r**k
            # tail sum_{m>k} m(m+1) r^m <= (k+1)(k+2) r^(k+1) / (1 - r (k+3)/(k+1))
            ratio = r * (k + 3) / (k + 1)
            if ratio < 1:
                tail = t * sech2 * (k + 1) * (k + 2) * r ** (k + 1) / (1 - ratio)
                if tail < eps:
                    break
        rhs = 4 * ctx.sinh(2 * x) / ctx.cosh(2 * x) ** 3
        res = abs(s2 - rhs)
        checks.append(NumericCheck(f"id_from_tanh[x={ctx.nstr(x, 8)}]", "id_from_tanh",
                                   context(p).mpf(res), tol, context(p).mpf(tail), k))
    return checks


def verify_coth_identities(points: Iterable, M_max: int, p: int = DEFAULT_PRECISION,
                           tol=None) -> list[NumericCheck]:
    """Relative residuals of the four expansions of ``cosh(x)/sinh(x)^(2N+1)``
    in terms of ``sinh(x)/cosh(x)^(2N+1)`` and powers of ``sinh(2x)``."""
    wp = p + GUARD_BITS
    ctx = context(wp)
    tol = ctx.ldexp(1, -(p - 24)) if tol is None else _as_tol(ctx, tol)
    checks = []
    for x in points:
        x = to_mpf(ctx, x)
        sh, ch, sh2, ch2 = ctx.sinh(x), ctx.cosh(x), ctx.sinh(2 * x), ctx.cosh(2 * x)
        for M in range(1, M_max + 1):
            for e, label in ((4 * M - 1, "eq_coth_odd"), (4 * M + 1, "eq_coth_even")):
                lhs = ch / sh**e
                base = sh / ch**e
                if label == "eq_coth_odd":
                    f1 = -base + ctx.fsum(
                        to_mpf(ctx, Fraction(2 ** (2 * (M + k)) * M, M + k) * binom(M + k, 2 * k))
                        / sh2 ** (2 * (M + k) - 1) for k in range(M + 1))
                    f2 = base + ctx.fsum(
                        to_mpf(ctx, Fraction(2 ** (2 * (M + k) + 1) * (M - k), 2 * k + 1) * binom(M + k, 2 * k))
                        * ch2 / sh2 ** (2 * (M + k) + 1) for k in range(M))
                else:
                    f1 = base + ctx.fsum(
                        to_mpf(ctx, Fraction(2 ** (2 * (M + k) + 1) * (2 * M + 1), 2 * k + 1) * binom(M + k, 2 * k))
                        / sh2 ** (2 * (M + k) + 1) for k in range(M + 1))
                    f2 = -base + ctx.fsum(
                        2 ** (2 * (M + k) + 1) * binom(M + k, 2 * k) * ch2 / sh2 ** (2 * (M + k) + 1)
                        for k in range(M + 1))
                for form, rhs in ((1, f1), (2, f2)):
                    rel = abs(lhs - rhs) / abs(lhs)
                    checks.append(NumericCheck(
                        f"{label}[M={M},form={form},x={ctx.nstr(x, 8)}]", label, context(p).mpf(rel), tol))
    return checks


# ---------------------------------------------------------------------------
# relations from repeatedly differentiated tanh identities


@dataclass
class TanhRelation:
    """``sum_i coefficients[i-1] zeta(2i+1) / pi^(2i) = 0`` up to ``truncation_bound``."""

    N: int
    k_max: int
    coefficients: list[Fraction]
    residual: object
    truncation_bound: object
    tol: object

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def _limit_row_sums(weights: dict[int, Fraction], h) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for m, w in weights.items():
        if not w:
            continue
        for i, r in enumerate(limit_coeffs(m, h).r, start=1):
            out[i] = out.get(i, Fraction(0)) + w * r
    return out


def generate_tanh_recurrence(N: int, k_max: int = 120, p: int = DEFAULT_PRECISION,
                             tol="1e-8") -> TanhRelation:
    """Relation among odd zeta values from the tanh identity differentiated ``2N`` times.

    ``N = 1`` is the once-differentiated-twice identity
    ``sum_k k(k+1)/2^k sinh(x)/cosh(x)^(2k+3) = 4 sinh(2x)/cosh(2x)^3`` itself
    and reproduces the ``28 zeta(3) / pi^2`` relation; each further ``N`` adds
    two derivatives.  Both sides, expanded in ``sinh/cosh^(2m+1)`` of ``x`` and
    of ``2x``, are summed against ``1/n`` at ``x = alpha n`` and sent to the
    limit termwise; the argument doubling does not change the limits.
    """
    if N < 1:
        raise ValueError("N must be >= 1 (N = 0 contains tanh itself, whose series diverges)")
    fam = tanh_family_sides(N - 1, k_max)
    if fam.lhs[0] or fam.rhs[0]:
        raise ArithmeticError("unexpected tanh term in differentiated identity")
    top = max(len(fam.lhs), len(fam.rhs)) - 1
    h = build_h(top)
    left = _limit_row_sums({m: fam.lhs[m] for m in range(1, len(fam.lhs))}, h)
    right = _limit_row_sums({m: fam.rhs[m] for m in range(1, len(fam.rhs))}, h)
    idx = sorted(set(left) | set(right))
    coeffs = [left.get(i, Fraction(0)) - right.get(i, Fraction(0)) for i in range(1, idx[-1] + 1)]

    wp = p + GUARD_BITS
    ctx = context(wp)
    tol = _as_tol(ctx, tol)
    residual = abs(zeta_combo_value({i: c for i, c in enumerate(coeffs, start=1)}, wp))

    # dropped source terms k > k_max: |coeff sum| of 2(N-1) derivatives of T_{k+1}
    # is at most prod over steps of 4m^2 + (2m+2)(2m+1), each base limit <= limit(1)
    def g(k: int) -> Fraction:
        v = Fraction(k * (k + 1), 2**k)
        for i in range(N - 1):
            m = k + 1 + i
            v *= 4 * m * m + (2 * m + 2) * (2 * m + 1)
        return v

    rho = g(k_max + 2) / g(k_max + 1)
    if rho < 1:
        bound = to_mpf(ctx, g(k_max + 1) / (1 - rho)) * to_mpf(ctx, limit_value(1, wp))
    else:
        bound = ctx.inf
    out = context(p)
    return TanhRelation(N, k_max, coeffs, out.mpf(residual), out.mpf(bound), tol)
