"""Exact rational arithmetic helpers: binomials, factorials, Bernoulli numbers.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

__all__ = ["Rational", "binom", "factorial", "bernoulli", "bernoulli_table"]

Rational = Fraction


def binom(n: int, k: int) -> int:
    """Binomial coefficient with ``binom(n, k) == 0`` for ``k < 0`` or ``n < k``.

    The zero convention also covers negative ``n`` (then ``n < k`` for every
    ``k >= 0``), so the result is never a generalized binomial.
    """
    if k < 0 or n < k:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


class _BernoulliTable:
    # Guarded so that concurrent readers only ever see fully computed entries.
    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, r: int) -> Fraction:
        values = self._values
        if r < len(values):
            return values[r]
        with self._lock:
            values = list(self._values)
            for m in range(len(values), r + 1):
                # sum_{j=0}^{m} binom(m+1, j) B_j = 0, solved for B_m
                if m > 1 and m % 2 == 1:
                    values.append(Fraction(0))
                    continue
                acc = sum(
                    (math.comb(m + 1, j) * values[j] for j in range(m) if values[j]),
                    Fraction(0),
                )
                values.append(-acc / (m + 1))
            self._values = values
        return values[r]

    def prefix(self, r: int) -> list[Fraction]:
        self.get(r)
        return self._values[: r + 1]


_TABLE = _BernoulliTable()


def bernoulli(r: int) -> Fraction:
    """Bernoulli number ``B_r`` with ``B_1 = -1/2``."""
    if r < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {r}")
    return _TABLE.get(r)


def bernoulli_table(r: int) -> list[Fraction]:
    """Return ``[B_0, ..., B_r]``."""
    if r < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {r}")
    return _TABLE.prefix(r)
