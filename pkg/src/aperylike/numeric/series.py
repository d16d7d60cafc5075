"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bigfloat import BigFloat
from .combinatorics import as_fraction, binom_rational


@dataclass(frozen=True)
class PowerSeries:
    """``sum_{n<=order} c_n z^n + O(z^(order+1))``.

    Every arithmetic result records the highest order through which its
    coefficients are still exact consequences of the operands.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a power series needs at least one coefficient")
        object.__setattr__(self, "coefficients", tuple(as_fraction(c) for c in self.coefficients))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, order: int | None = None) -> "PowerSeries":
        """Build from coefficients, zero-padding (exactly) up to ``order`` if given."""
        cs = [as_fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c, order: int) -> "PowerSeries":
        return cls.from_coefficients([c], order)

    @classmethod
    def binomial(cls, a, order: int) -> "PowerSeries":
        """``(1 + z)^a`` for rational ``a``."""
        return cls(tuple(binom_rational(a, n) for n in range(order + 1)))

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    order = truncation_order

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend the truncation order")
        return PowerSeries(self.coefficients[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(tuple(a + b for a, b in zip(self.coefficients[: n + 1], other.coefficients)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c) -> "PowerSeries":
        c = as_fraction(c)
        return PowerSeries(tuple(c * x for x in self.coefficients))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return PowerSeries(tuple(sum((a[i] * b[m - i] for i in range(m + 1)), Fraction(0)) for m in range(n + 1)))

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            raise ValueError("derivative of an order-0 truncation carries no information")
        return PowerSeries(tuple(n * self.coefficients[n] for n in range(1, len(self.coefficients))))

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``z^k``; the truncation order grows by ``k``."""
        return PowerSeries((Fraction(0),) * k + self.coefficients)

    def mul_poly(self, poly: Sequence) -> "PowerSeries":
        """Multiply by an exact polynomial given by its coefficient list.

        Coefficient ``m`` of the product only sees ``c_j`` with ``j <= m - v``
        where ``v`` is the polynomial's lowest degree, so the result is exact
        through order ``self.order + v``.
        """
        p = [as_fraction(c) for c in poly]
        nz = [i for i, c in enumerate(p) if c != 0]
        if not nz:
            return PowerSeries.constant(0, self.order)
        v = nz[0]
        n = self.order + v
        cs = self.coefficients
        out = []
        for m in range(n + 1):
            acc = Fraction(0)
            for i in nz:
                j = m - i
                if 0 <= j <= self.order:
                    acc += p[i] * cs[j]
            out.append(acc)
        return PowerSeries(tuple(out))

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(z))`` for ``inner`` with zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must vanish at the origin")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = PowerSeries.constant(self.coefficients[n], n)
        for c in reversed(self.coefficients[:n]):
            acc = (acc * inner) + PowerSeries.constant(c, n)
        return acc

    def evaluate(self, x, prec: int | None = None):
        """Horner evaluation of the truncated polynomial.

        Exact for rational ``x``; a :class:`BigFloat` otherwise.
        """
        if isinstance(x, BigFloat) or prec is not None:
            xb = x if isinstance(x, BigFloat) else BigFloat.exact(x, prec)
            acc = BigFloat.exact(0, xb.prec)
            for c in reversed(self.coefficients):
                acc = acc * xb + BigFloat.exact(c, xb.prec)
            return acc
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc
