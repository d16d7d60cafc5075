"""Exact combinatorial primitives over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC


class InfiniteValuation(ArithmeticError):
    """Raised when the p-adic valuation of zero is requested."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def binom_rational(a, n: int) -> Fraction:
    """Generalized binomial coefficient ``C(a, n) = a(a-1)...(a-n+1)/n!``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = as_fraction(a)
    num, den = 1, 1
    for i in range(n):
        # (a - i) = (a.num - i*a.den)/a.den
        num *= a.numerator - i * a.denominator
        den *= a.denominator
    return Fraction(num, den * factorial(n))


def binom_half(n: int) -> Fraction:
    """``C(-1/2, n)`` as an exact rational, from the falling-product definition."""
    return binom_rational(Fraction(-1, 2), n)


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial ``(a)_n = a(a+1)...(a+n-1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = as_fraction(a)
    num, den = 1, a.denominator ** n
    for i in range(n):
        num *= a.numerator + i * a.denominator
    return Fraction(num, den)


def double_factorial(m: int) -> int:
    """``m!!`` with the conventions ``(-1)!! = 0!! = 1``."""
    if m < -1:
        raise ValueError("double factorial is defined here for m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _int_valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def ord_p(x, p: int) -> int:
    """p-adic valuation of a nonzero rational (negative when p divides the denominator)."""
    x = as_fraction(x)
    if x == 0:
        raise InfiniteValuation("ord_p(0) is +infinity")
    if p < 2:
        raise ValueError("p must be a prime")
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)
