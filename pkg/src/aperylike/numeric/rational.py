"""Text forms of exact rationals: ``"num/den"``, bare integers and decimals."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"41/64"``, ``"-3"``, ``"1.25"`` or ``"1e-3"`` exactly.

    Decimal strings are read as the exact rational they denote, never via a
    binary float.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, den = s.split("/", 1)
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    try:
        return Fraction(Decimal(s))
    except (InvalidOperation, ValueError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
