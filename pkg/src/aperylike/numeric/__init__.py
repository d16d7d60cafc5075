"""Exact rationals, error-tracked reals, truncated power series and combinatorics."""

from .bigfloat import BigFloat, cos_pi, pi
from .combinatorics import (
    InfiniteValuation,
    as_fraction,
    binom_half,
    binom_rational,
    double_factorial,
    ord_p,
    pochhammer,
)
from .rational import format_rational, parse_rational
from .series import PowerSeries

__all__ = [
    "BigFloat",
    "InfiniteValuation",
    "PowerSeries",
    "as_fraction",
    "binom_half",
    "binom_rational",
    "cos_pi",
    "double_factorial",
    "format_rational",
    "ord_p",
    "parse_rational",
    "pi",
    "pochhammer",
]
