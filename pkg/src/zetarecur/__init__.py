"""Exact and high-precision checks of recurrence relations among odd zeta values."""

from .coeffs import build_tables, limit_coeffs
from .exactcore import bernoulli, binom, factorial
from .identities import (
    generate_tanh_recurrence,
    klimit_combo,
    verify_klimit,
    verify_limit,
    verify_recurrence_cor41,
)
from .zetanum import s_sum, zeta_int

__version__ = "0.1.0"

__all__ = [
    "bernoulli",
    "binom",
    "build_tables",
    "factorial",
    "generate_tanh_recurrence",
    "klimit_combo",
    "limit_coeffs",
    "s_sum",
    "verify_klimit",
    "verify_limit",
    "verify_recurrence_cor41",
    "zeta_int",
]
