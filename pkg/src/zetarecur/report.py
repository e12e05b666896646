"""Result records shared by the exact and numerical checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class IdentityReport:
    """Outcome of one family of identity checks.

    ``failures`` holds human-readable descriptions of every mismatch; an
    empty list means every instance checked held.
    """

    name: str
    label: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, what: str) -> None:
        self.checked += 1
        if not cond:
            self.failures.append(what)

    def merge(self, other: "IdentityReport") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class NumericCheck:
    """A residual compared against a tolerance, with truncation metadata."""

    name: str
    label: str
    residual: Any
    tol: Any
    tail_bound: Any = 0
    terms_used: int = 0
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual < self.tol

    def __bool__(self) -> bool:
        return self.ok
