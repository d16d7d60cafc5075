"""Reduction of rationals modulo prime powers and base-p digits."""

from __future__ import annotations

from dataclasses import dataclass

from ..numeric import as_fraction


class DenominatorDivisibleError(ArithmeticError):
    """The denominator shares the prime p, so no residue modulo p^r is defined."""


@dataclass(frozen=True)
class Residue:
    value: int
    p: int
    r: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not 0 <= self.value < self.p ** self.r:
            raise ValueError(f"residue {self.value} outside [0, {self.p}^{self.r})")

    @property
    def modulus(self) -> int:
        return self.p ** self.r

    def signed(self) -> int:
        """Representative in ``(-p^r/2, p^r/2]``."""
        m = self.modulus
        return self.value - m if self.value > m // 2 else self.value

    def __int__(self) -> int:
        return self.value


def rat_mod(x, p: int, r: int = 1) -> Residue:
    """``num * den^{-1} mod p^r`` for a rational whose denominator is prime to ``p``."""
    x = as_fraction(x)
    m = p ** r
    if x.denominator % p == 0:
        raise DenominatorDivisibleError(f"denominator of {x} divisible by {p}")
    return Residue(x.numerator * pow(x.denominator, -1, m) % m, p, r)


def congruent(x, y, p: int, r: int = 1) -> bool:
    return rat_mod(as_fraction(x) - as_fraction(y), p, r).value == 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


@dataclass(frozen=True)
class DigitExpansion:
    """Base-p digits, most significant first."""

    digits: tuple[int, ...]
    base_p: int

    def __post_init__(self):
        if any(not 0 <= d < self.base_p for d in self.digits):
            raise ValueError("digit out of range")
        if len(self.digits) > 1 and self.digits[0] == 0:
            raise ValueError("leading digit must be nonzero")

    @classmethod
    def of(cls, n: int, p: int) -> "DigitExpansion":
        if n < 0:
            raise ValueError("n must be >= 0")
        if n == 0:
            return cls((0,), p)
        out = []
        while n:
            n, d = divmod(n, p)
            out.append(d)
        return cls(tuple(reversed(out)), p)

    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.base_p + d
        return v
