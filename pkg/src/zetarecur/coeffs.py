"""Exact coefficient tables ``c, h, U, V, L, D`` and the limit coefficients.

Matrices are ``(n_max+1) x (n_max+1)`` nested lists of Fractions indexed
from 1; row and column 0 are unused (zero) unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcore import binom, factorial
from .report import IdentityReport

__all__ = [
    "CoeffTables",
    "LimitCoeffs",
    "TableMismatch",
    "c_closed",
    "c_row0",
    "build_c",
    "build_h",
    "build_U",
    "build_V",
    "build_L",
    "build_D",
    "build_tables",
    "invert_lower",
    "matmul",
    "identity",
    "check_binomial_recurrence",
    "check_matrix_identities",
    "limit_coeffs",
]

Matrix = list[list[Fraction]]


class TableMismatch(AssertionError):
    """Two independent constructions of a table disagreed."""


def _zeros(n: int) -> Matrix:
    return [[Fraction(0)] * (n + 1) for _ in range(n + 1)]


def identity(n: int) -> Matrix:
    m = _zeros(n)
    for i in range(1, n + 1):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a) - 1
    out = _zeros(n)
    for i in range(1, n + 1):
        ai = a[i]
        row = out[i]
        for k in range(1, n + 1):
            if not ai[k]:
                continue
            aik, bk = ai[k], b[k]
            for j in range(1, n + 1):
                if bk[j]:
                    row[j] += aik * bk[j]
    return out


def invert_lower(a: Matrix) -> Matrix:
    """Exact inverse of a lower-triangular matrix by forward substitution."""
    n = len(a) - 1
    inv = _zeros(n)
    for j in range(1, n + 1):
        if not a[j][j]:
            raise ZeroDivisionError(f"singular triangular matrix at {j}")
        inv[j][j] = 1 / a[j][j]
        for i in range(j + 1, n + 1):
            s = sum((a[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
            inv[i][j] = -s / a[i][i]
    return inv


# ---------------------------------------------------------------------------
# c_{n,k}


def c_closed(n: int, k: int) -> Fraction:
    """``2/4^k * sum_{j=1}^{k} (-1)^(k-j) binom(2k, k-j) (2j)^(2n)``."""
    s = sum((-1) ** (k - j) * binom(2 * k, k - j) * (2 * j) ** (2 * n) for j in range(1, k + 1))
    return Fraction(2 * s, 4**k)


def c_row0(k: int) -> Fraction:
    """``c_{0,k} = (-1)^(k+1) binom(2k, k) / 4^k`` for ``k >= 1``."""
    return Fraction((-1) ** (k + 1) * binom(2 * k, k), 4**k)


def build_c(n_max: int) -> Matrix:
    """Table ``c[n][k]`` for ``0 <= n, k <= n_max`` (row 0 is the extension).

    Rows ``n >= 1`` are built by the recurrence and by the closed form;
    any disagreement raises :class:`TableMismatch`.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    c = _zeros(n_max)
    for k in range(1, n_max + 1):
        c[0][k] = c_row0(k)
        if c_closed(0, k) != c[0][k]:
            raise TableMismatch(f"row 0 closed form differs at k={k}")
    for n in range(1, n_max + 1):
        c[n][1] = Fraction(4**n, 2)
        for k in range(2, n):
            c[n][k] = 2 * k * (2 * k - 1) * c[n - 1][k - 1] + 4 * k * k * c[n - 1][k]
        if n >= 2:
            c[n][n] = Fraction(factorial(2 * n))
        for k in range(1, n_max + 1):
            closed = c_closed(n, k)
            if closed != c[n][k]:
                raise TableMismatch(f"c[{n}][{k}]: recurrence {c[n][k]} != closed form {closed}")
    return c


def build_h(n_max: int, k_max: int | None = None) -> Matrix:
    """``h[k][n]``: ``h_{1,n} = 1``, ``h_{k,n} = sum_{j=k-1}^{n-1} h_{k-1,j} / j^2``.

    Rows ``k > k_max`` are left at zero when ``k_max`` is given.
    """
    h = _zeros(n_max)
    for n in range(1, n_max + 1):
        h[1][n] = Fraction(1)
    for k in range(2, min(n_max, k_max or n_max) + 1):
        acc = Fraction(0)
        for n in range(k, n_max + 1):
            acc += h[k - 1][n - 1] / (n - 1) ** 2
            h[k][n] = acc
    return h


def build_U(n_max: int, c: Matrix | None = None) -> Matrix:
    """``u_{n,k} = (-1)^n c_{n,k} / (2n)!``, checked against its row recurrence."""
    c = c if c is not None else build_c(n_max)
    U = _zeros(n_max)
    for n in range(1, n_max + 1):
        f = Fraction((-1) ** n, factorial(2 * n))
        for k in range(1, n + 1):
            U[n][k] = f * c[n][k]
    # recurrence, with row 0 taken from the extended c table
    prev = [Fraction(0)] + [c[0][k] for k in range(1, n_max + 1)]
    for n in range(1, n_max + 1):
        d = 2 * n * (2 * n - 1)
        for k in range(1, n_max + 1):
            left = prev[k - 1] if k >= 2 else Fraction(0)
            want = -Fraction(2 * k * (2 * k - 1), d) * left - Fraction(4 * k * k, d) * prev[k]
            if want != U[n][k]:
                raise TableMismatch(f"u recurrence fails at ({n},{k})")
        prev = U[n]
    return U


def v_closed(n: int, k: int, h: Matrix) -> Fraction:
    return Fraction((-1) ** n * factorial(2 * k) * 2 ** (2 * (n - k)), n * n * binom(2 * n, n)) * h[k][n]


def build_V(n_max: int, U: Matrix | None = None, h: Matrix | None = None) -> Matrix:
    """Inverse of ``U``, built by recurrence, closed form and inversion.

    Raises :class:`TableMismatch` unless all three agree exactly.
    """
    U = U if U is not None else build_U(n_max)
    h = h if h is not None else build_h(n_max)

    rec = _zeros(n_max)
    prev = [Fraction(1)] + [Fraction(0)] * n_max  # v_{0,0} = 1
    for n in range(1, n_max + 1):
        d = 2 * n * (2 * n - 1)
        for k in range(1, n + 1):
            rec[n][k] = -Fraction(2 * k * (2 * k - 1), d) * prev[k - 1] - Fraction(4 * (n - 1) ** 2, d) * prev[k]
        prev = rec[n]

    closed = _zeros(n_max)
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            closed[n][k] = v_closed(n, k, h)

    inv = invert_lower(U)
    for n in range(1, n_max + 1):
        for k in range(1, n_max + 1):
            if not rec[n][k] == closed[n][k] == inv[n][k]:
                raise TableMismatch(
                    f"V[{n}][{k}]: recurrence {rec[n][k]}, closed form {closed[n][k]}, inverse {inv[n][k]}"
                )
    return rec


def build_L(n_max: int) -> Matrix:
    L = _zeros(n_max)
    for k in range(1, n_max + 1):
        for n in range(k, min(2 * k, n_max) + 1):
            L[n][k] = Fraction(2 ** (2 * k + 1) * binom(k, n - k))
    return L


def build_D(n_max: int) -> Matrix:
    D = _zeros(n_max)
    for i in range(1, n_max + 1):
        D[i][i] = Fraction(2 ** (2 * i + 1))
    return D


@dataclass
class CoeffTables:
    n_max: int
    c: Matrix
    h: Matrix
    U: Matrix
    V: Matrix
    L: Matrix
    D: Matrix


@lru_cache(maxsize=8)
def build_tables(n_max: int = 40) -> CoeffTables:
    """All tables up to ``n_max``; cached, so treat the result as read-only."""
    c = build_c(n_max)
    h = build_h(n_max)
    U = build_U(n_max, c)
    V = build_V(n_max, U, h)
    return CoeffTables(n_max, c, h, U, V, build_L(n_max), build_D(n_max))


# ---------------------------------------------------------------------------
# identity checks


def check_binomial_recurrence(n_max: int, c: Matrix | None = None) -> IdentityReport:
    c = c if c is not None else build_tables(n_max).c
    rep = IdentityReport(f"binomial_recurrence[n<={n_max}]", "c_n_k_binomial_recurrence")

    def a(n: int, k: int) -> Fraction:
        if k > n:
            return Fraction(0)
        return sum((binom(k, i - k) * c[n][i] for i in range(k, n + 1)), Fraction(0))

    A = [[a(n, k) for k in range(n_max + 1)] for n in range(n_max + 1)]
    for n in range(1, n_max + 1):
        rep.expect(A[n][1] == 2 ** (4 * n - 3), f"a[{n}][1] = {A[n][1]} != 2^{4 * n - 3}")
        for k in range(1, n + 1):
            rep.expect(A[n][k] == 2 ** (2 * (n - k)) * c[n][k], f"binomial recurrence at n={n} k={k}")
    for n in range(2, n_max + 1):
        for k in range(1, n + 1):
            want = 2 * k * (2 * k - 1) * A[n - 1][k - 1] + 16 * k * k * A[n - 1][k]
            rep.expect(A[n][k] == want, f"a recurrence at n={n} k={k}")
    return rep


def _compare(rep: IdentityReport, name: str, x: Matrix, y: Matrix) -> None:
    n = len(x) - 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rep.expect(x[i][j] == y[i][j], f"{name} differs at ({i},{j})")


def check_matrix_identities(n_max: int, tables: CoeffTables | None = None) -> IdentityReport:
    """``UV = VU = I``, ``UL = DU``, ``LV = VD`` and the written-out rows of ``LV = VD``."""
    t = tables if tables is not None else build_tables(n_max)
    U, V, L, D = t.U, t.V, t.L, t.D
    rep = IdentityReport(f"matrix_identities[n<={n_max}]", "V_odd_row_of_L,V_even_row_of_L")
    I = identity(n_max)
    _compare(rep, "UV vs I", matmul(U, V), I)
    _compare(rep, "VU vs I", matmul(V, U), I)
    _compare(rep, "UL vs DU", matmul(U, L), matmul(D, U))
    _compare(rep, "LV vs VD", matmul(L, V), matmul(V, D))

    for M in range(1, n_max // 2 + 1):
        for j in range(1, n_max + 1):
            odd = sum(
                (
                    Fraction(2 ** (2 * (M + k) + 1) * (M - k), 2 * k + 1) * binom(M + k, 2 * k) * V[M + k][j]
                    for k in range(M)
                ),
                Fraction(0),
            )
            rep.expect(odd == 2 ** (2 * j + 1) * V[2 * M - 1][j], f"V_odd_row_of_L at M={M} j={j}")
            even = sum(
                (2 ** (2 * (M + k) + 1) * binom(M + k, 2 * k) * V[M + k][j] for k in range(M + 1)),
                Fraction(0),
            )
            rep.expect(even == 2 ** (2 * j + 1) * V[2 * M][j], f"V_even_row_of_L at M={M} j={j}")
    return rep


# ---------------------------------------------------------------------------
# limit coefficients


@dataclass(frozen=True)
class LimitCoeffs:
    """``r[k-1]`` multiplies ``zeta(2k+1) / pi^(2k)`` in the limit value for ``N``."""

    N: int
    r: tuple[Fraction, ...]


def limit_coeffs(N: int, h: Matrix | None = None) -> LimitCoeffs:
    """Coefficients ``r_k = (2k)! (2^(2N+1) - 2^(2(N-k))) h_{k,N} / (N^2 binom(2N, N))``.

    Pass a prebuilt ``h`` table (covering column ``N``) when computing many rows.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if h is None or len(h) <= N:
        h = build_h(N)
    scale = Fraction(1, N * N * binom(2 * N, N))
    r = tuple(
        scale * factorial(2 * k) * (2 ** (2 * N + 1) - 2 ** (2 * (N - k))) * h[k][N] for k in range(1, N + 1)
    )
    return LimitCoeffs(N, r)
