"""Arbitrary-precision reals carrying an absolute error bound.

Values are rounded with :mod:`mpmath.libmp` at an explicit precision that is
passed to every primitive, so no global context is ever consulted.  The error
bound is propagated with forward interval-style rules and is always rounded
upward; it bounds ``|stored - true|`` where *true* is the exact value of the
expression that produced the number.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

from mpmath import libmp

_ERR_PREC = 32
_UP = libmp.round_up
_NEAR = libmp.round_nearest
_ZERO = libmp.fzero


def _ulp(v, prec: int):
    # one unit in the last place of a value rounded to ``prec`` bits
    if v == _ZERO:
        return _ZERO
    _, _, exp, bc = v
    return libmp.from_man_exp(1, exp + bc - prec)


def _eadd(*terms):
    out = _ZERO
    for t in terms:
        out = libmp.mpf_add(out, t, _ERR_PREC, _UP)
    return out


def _emul(a, b):
    return libmp.mpf_mul(a, b, _ERR_PREC, _UP)


def _abs_up(v):
    return libmp.mpf_abs(v, _ERR_PREC, _UP)


def _to_mpf_exact(x):
    """Exact libmp value for ints and floats; None when x is not dyadic."""
    if isinstance(x, int):
        return libmp.from_int(x)
    if isinstance(x, float):
        return libmp.from_float(x)
    if isinstance(x, Fraction) and x.denominator & (x.denominator - 1) == 0:
        return libmp.mpf_shift(libmp.from_int(x.numerator), -(x.denominator.bit_length() - 1))
    return None


class BigFloat:
    """A rounded real ``value`` together with ``abs_error >= |value - true|``."""

    __slots__ = ("_v", "_e", "prec")

    def __init__(self, v, e, prec: int):
        self._v = v
        self._e = e
        self.prec = prec

    # -- construction ---------------------------------------------------
    @classmethod
    def exact(cls, x, prec: int) -> "BigFloat":
        """Embed an int, float, Fraction, decimal string or BigFloat at ``prec`` bits."""
        if isinstance(x, BigFloat):
            return x.with_prec(prec)
        if isinstance(x, str):
            x = Fraction(Decimal(x)) if "/" not in x else Fraction(x)
        if isinstance(x, Decimal):
            x = Fraction(x)
        if not isinstance(x, (int, float, Fraction)):
            x = Fraction(x)
        m = _to_mpf_exact(x)
        if m is not None:
            v = libmp.mpf_pos(m, prec, _NEAR)
        else:
            v = libmp.from_rational(x.numerator, x.denominator, prec, _NEAR)
        return cls(v, _ZERO if v == m else _ulp(v, prec), prec)

    @classmethod
    def from_strings(cls, value: str, error: str, prec: int) -> "BigFloat":
        """Inverse of :meth:`to_strings`."""
        base = cls.exact(value, prec)
        err = libmp.from_rational(*_frac_parts(Fraction(Decimal(error))), _ERR_PREC, _UP)
        return cls(base._v, _eadd(base._e, err), prec)

    def with_prec(self, prec: int) -> "BigFloat":
        v = libmp.mpf_pos(self._v, prec, _NEAR)
        rnd = _ZERO if v == self._v else _ulp(v, prec)
        return BigFloat(v, _eadd(self._e, rnd), prec)

    def widen(self, extra) -> "BigFloat":
        """Same value with ``extra`` (nonnegative) added to the error bound."""
        m = extra._v if isinstance(extra, BigFloat) else _to_mpf_exact(float(extra))
        add = _abs_up(m)
        if isinstance(extra, BigFloat):
            add = _eadd(add, extra._e)
        return BigFloat(self._v, _eadd(self._e, add), self.prec)

    # -- inspection -----------------------------------------------------
    @property
    def abs_error(self) -> float:
        return libmp.to_float(self._e, rnd=_UP)

    @property
    def mid(self) -> Fraction:
        return Fraction(*libmp.to_rational(self._v))

    @property
    def error_bound(self) -> Fraction:
        return Fraction(*libmp.to_rational(self._e))

    @property
    def lower(self) -> Fraction:
        return self.mid - self.error_bound

    @property
    def upper(self) -> Fraction:
        return self.mid + self.error_bound

    def __float__(self) -> float:
        return libmp.to_float(self._v)

    def contains(self, x) -> bool:
        if isinstance(x, BigFloat):
            return self.overlaps(x)
        return abs(Fraction(x) - self.mid) <= self.error_bound

    def overlaps(self, other: "BigFloat") -> bool:
        """True when the two error intervals intersect."""
        return abs(self.mid - other.mid) <= self.error_bound + other.error_bound

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    def to_strings(self, digits: int | None = None) -> tuple[str, str]:
        """Decimal value and an upward-rounded decimal error bound.

        The error string also covers the rounding of the value string itself.
        """
        if digits is None:
            digits = max(5, int(self.prec * 0.30103) + 1)
        val = libmp.to_str(self._v, digits)
        render = abs(Fraction(Decimal(val)) - self.mid)
        return val, _ceil_decimal(self.error_bound + render, 3)

    def __str__(self) -> str:
        val, err = self.to_strings()
        return f"{val} +/- {err}"

    def __repr__(self) -> str:
        return f"BigFloat({libmp.to_str(self._v, 20)}, err={libmp.to_str(self._e, 3)}, prec={self.prec})"

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "BigFloat":
        if isinstance(other, BigFloat):
            return other
        return BigFloat.exact(other, self.prec)

    def _prec_with(self, other: "BigFloat") -> int:
        return max(self.prec, other.prec)

    def __neg__(self) -> "BigFloat":
        return BigFloat(libmp.mpf_neg(self._v), self._e, self.prec)

    def __pos__(self) -> "BigFloat":
        return self

    def __abs__(self) -> "BigFloat":
        return BigFloat(libmp.mpf_abs(self._v), self._e, self.prec)

    def __add__(self, other) -> "BigFloat":
        o = self._coerce(other)
        prec = self._prec_with(o)
        v = libmp.mpf_add(self._v, o._v, prec, _NEAR)
        return BigFloat(v, _eadd(self._e, o._e, _ulp(v, prec)), prec)

    __radd__ = __add__

    def __sub__(self, other) -> "BigFloat":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BigFloat":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BigFloat":
        o = self._coerce(other)
        prec = self._prec_with(o)
        v = libmp.mpf_mul(self._v, o._v, prec, _NEAR)
        e = _eadd(_emul(_abs_up(self._v), o._e), _emul(_abs_up(o._v), self._e),
                  _emul(self._e, o._e), _ulp(v, prec))
        return BigFloat(v, e, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BigFloat":
        o = self._coerce(other)
        prec = self._prec_with(o)
        ay = libmp.mpf_abs(o._v)
        slack = libmp.mpf_sub(ay, o._e, _ERR_PREC, libmp.round_down)
        if libmp.mpf_le(slack, _ZERO):
            raise ZeroDivisionError("divisor interval contains zero")
        v = libmp.mpf_div(self._v, o._v, prec, _NEAR)
        num = _eadd(_emul(self._e, ay), _emul(_abs_up(self._v), o._e))
        den = libmp.mpf_mul(ay, slack, _ERR_PREC, libmp.round_down)
        e = _eadd(libmp.mpf_div(num, den, _ERR_PREC, _UP), _ulp(v, prec))
        return BigFloat(v, e, prec)

    def __rtruediv__(self, other) -> "BigFloat":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "BigFloat":
        if not isinstance(n, int):
            raise TypeError("BigFloat powers are integral; use sqrt() for half-integers")
        if n < 0:
            return BigFloat.exact(1, self.prec) / (self ** (-n))
        result = BigFloat.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sqrt(self) -> "BigFloat":
        if self.upper < 0:
            raise ValueError("square root of a negative number")
        prec = self.prec
        lo = libmp.mpf_sub(self._v, self._e, _ERR_PREC, libmp.round_down)
        if libmp.mpf_le(lo, _ZERO):
            # interval touches zero: enclose [0, sqrt(hi)]
            hi = libmp.mpf_add(libmp.mpf_abs(self._v), self._e, _ERR_PREC, _UP)
            top = libmp.mpf_sqrt(hi, _ERR_PREC, _UP)
            v = libmp.mpf_sqrt(libmp.mpf_abs(self._v), prec, _NEAR) if libmp.mpf_gt(self._v, _ZERO) else _ZERO
            return BigFloat(v, top, prec)
        v = libmp.mpf_sqrt(self._v, prec, _NEAR)
        # |sqrt(x) - sqrt(y)| <= |x - y| / sqrt(lo)
        e = _eadd(libmp.mpf_div(self._e, libmp.mpf_sqrt(lo, _ERR_PREC, libmp.round_down), _ERR_PREC, _UP), _ulp(v, prec))
        return BigFloat(v, e, prec)

    def square(self) -> "BigFloat":
        return self * self


def _frac_parts(q: Fraction) -> tuple[int, int]:
    return q.numerator, q.denominator


def _ceil_decimal(q: Fraction, sig: int) -> str:
    """Smallest ``sig``-digit decimal that is >= q >= 0."""
    if q <= 0:
        return "0"
    e = len(str(q.numerator // q.denominator)) if q >= 1 else -len(str(q.denominator // q.numerator)) + 1
    e -= sig
    scale = Fraction(10) ** e
    m = -((-q) // scale)
    while m >= 10 ** sig:
        e += 1
        scale *= 10
        m = -((-q) // scale)
    return f"{m}e{e}"


def pi(prec: int) -> BigFloat:
    v = libmp.mpf_pi(prec, _NEAR)
    return BigFloat(v, libmp.mpf_shift(_ulp(v, prec), 1), prec)


def cos_pi(q, prec: int) -> BigFloat:
    """``cos(pi*q)`` for an exact rational ``q``; error two units in the last place."""
    q = Fraction(q)
    x = libmp.from_rational(q.numerator, q.denominator, prec + 20, _NEAR)
    v = libmp.mpf_cos_pi(x, prec, _NEAR)
    # argument rounding contributes at most pi*|dx| which is far below ulp(v) unless v ~ 0
    arg_err = libmp.mpf_mul(libmp.from_int(4), _ulp(x, prec + 20), _ERR_PREC, _UP)
    return BigFloat(v, _eadd(libmp.mpf_shift(_ulp(v, prec), 1), arg_err), prec)
