"""Generalized hypergeometric series, their differential operator, and the
closed forms of the generating functions g̃₂ and g̃₃.

Series are summed term by term with one rational ratio per step.  For
``p = q + 1`` the tail after term ``n`` is certified with a ratio bound
``rho_n >= sup_{m>=n} |t_{m+1}/t_m|`` obtained by pairing each upper parameter
with a lower parameter (the factorial supplies the last lower parameter 1):
``|(a+m)/(b+m)| <= 1 + |a-b|/(n-|b|)`` for every ``m >= n > |b|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numeric import BigFloat, PowerSeries, as_fraction, binom_half, cos_pi, pochhammer


class ConvergenceError(ArithmeticError):
    """The requested accuracy could not be certified within the term budget."""


class NotValidatedError(ValueError):
    """The real-integral form is not known to represent the function here."""


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class HyperParams:
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(as_fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(as_fraction(b) for b in self.lower))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise ValueError(f"lower parameter {b} is a nonpositive integer; (b)_n vanishes")

    @classmethod
    def of(cls, upper: Sequence, lower: Sequence) -> "HyperParams":
        return cls(tuple(upper), tuple(lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def terminates_at(self) -> int | None:
        """Degree of the polynomial when some upper parameter is ``-m``."""
        degs = [-a for a in self.upper if _is_nonpositive_integer(a)]
        return int(min(degs)) if degs else None

    def coefficient(self, n: int) -> Fraction:
        """``(a)_n / ((b)_n n!)``."""
        out = Fraction(1)
        for m in range(n):
            out *= self.ratio(m)
        return out

    def ratio(self, m: int) -> Fraction:
        """Coefficient ratio ``c_{m+1} / c_m``."""
        num = Fraction(1)
        for a in self.upper:
            num *= a + m
        den = Fraction(m + 1)
        for b in self.lower:
            den *= b + m
        return num / den


@dataclass(frozen=True)
class EvalRequest:
    params: HyperParams
    argument: object
    precision_bits: int = 128
    max_terms: int = 100_000


def _ratio_bound(params: HyperParams, n: int) -> Fraction | None:
    """Upper bound on ``|c_{m+1}/c_m|`` for all ``m >= n``, or None if unavailable yet."""
    lows = list(params.lower) + [Fraction(1)]
    ups = list(params.upper)
    if len(ups) > len(lows):
        return None
    bound = Fraction(1)
    for i, b in enumerate(lows):
        if n <= abs(b):
            return None
        if i < len(ups):
            bound *= 1 + abs(ups[i] - b) / (n - abs(b))
        else:
            bound /= n - abs(b)
    return bound


def pfq_eval(req: EvalRequest) -> BigFloat:
    """Sum ``pFq(a; b; z)`` by direct series with a certified tail bound."""
    params = req.params
    prec = req.precision_bits
    work = prec + 24
    z = req.argument if isinstance(req.argument, BigFloat) else BigFloat.exact(req.argument, work)
    z = z.with_prec(work)
    if z.mid == 0 and z.error_bound == 0:
        return BigFloat.exact(1, prec)
    zabs = abs(float(z)) + z.abs_error
    if params.p == params.q + 1 and zabs >= 1 and params.terminates_at() is None:
        raise ValueError("|z| must be < 1 for p = q + 1")
    if params.p > params.q + 1 and params.terminates_at() is None:
        raise ValueError("series with p > q + 1 diverges unless it terminates")
    stop = params.terminates_at()
    zb = Fraction(zabs).limit_denominator(1 << 62) + Fraction(1, 1 << 62)
    term = BigFloat.exact(1, work)
    total = BigFloat.exact(0, work)
    target = Fraction(1, 1 << prec)
    for n in range(req.max_terms + 1):
        total = total + term
        if stop is not None and n == stop:
            return total.with_prec(prec)
        r = params.ratio(n)
        term = term * z * r.numerator / r.denominator
        if n < 2:
            continue
        rho = _ratio_bound(params, n + 1)
        if rho is None:
            continue
        rho *= zb
        if rho >= 1:
            continue
        tmag = term.upper if term.mid >= 0 else -term.lower
        tail = abs(tmag) / (1 - rho)
        scale = max(Fraction(1), abs(total.mid))
        if tail <= target * scale:
            return total.widen(float(tail) * (1 + 1e-12) + 1e-300).with_prec(prec)
    raise ConvergenceError(f"no convergence within max_terms={req.max_terms}")


def hyp(upper, lower, z, prec: int = 128, max_terms: int = 100_000) -> BigFloat:
    return pfq_eval(EvalRequest(HyperParams.of(upper, lower), z, prec, max_terms))


def hyp2f1_pfaff(a, b, c, z, prec: int = 128) -> BigFloat:
    """``2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`` for ``z <= 0``.

    Only ``a`` in ``{1/4, 1/2, 1}`` style exponents with a known root are needed
    here; the power is formed from square roots so it stays error-tracked.
    """
    work = prec + 16
    zb = z if isinstance(z, BigFloat) else BigFloat.exact(z, work)
    one_mz = 1 - zb
    w = zb / (zb - 1)
    inner = hyp([a, as_fraction(c) - as_fraction(b)], [c], w, work)
    return (inner * _rational_power(one_mz, -as_fraction(a))).with_prec(prec)


def _rational_power(x: BigFloat, e: Fraction) -> BigFloat:
    """``x^e`` for ``e`` with a power-of-two denominator, via repeated square roots."""
    e = as_fraction(e)
    den = e.denominator
    if den & (den - 1):
        raise ValueError("only dyadic exponents are supported")
    root = x
    while den > 1:
        root = root.sqrt()
        den //= 2
    return root ** e.numerator


# ---------------------------------------------------------------------------
# Operators and exact series solutions
# ---------------------------------------------------------------------------

def hgd_apply(params: HyperParams, s: PowerSeries) -> PowerSeries:
    """``-(θ+a_1)...(θ+a_p) s + ∂(θ+b_1-1)...(θ+b_q-1) s`` with ``θ = z∂``.

    Exact through order ``N-1``.
    """
    if s.order < 1:
        raise ValueError("hgd_apply needs truncation order >= 1")
    c = s.coefficients
    out = []
    for m in range(s.order):
        up = Fraction(1)
        for a in params.upper:
            up *= m + a
        low = Fraction(m + 1)
        for b in params.lower:
            low *= m + b
        out.append(-up * c[m] + low * c[m + 1])
    return PowerSeries(tuple(out))


def pd_polynomial(params: HyperParams, d: int, order: int | None = None) -> PowerSeries:
    """Degree-``d`` truncation ``P_d`` of the pFq series, zero-padded to ``order`` (default ``d+1``)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    coeffs = []
    c = Fraction(1)
    for n in range(d + 1):
        coeffs.append(c)
        c *= params.ratio(n)
    return PowerSeries.from_coefficients(coeffs, d + 1 if order is None else order)


def pd_image_coefficient(params: HyperParams, d: int) -> Fraction:
    """``-(a)_{d+1} / ((b)_d d!)``, the single nonzero coefficient of the operator image of ``P_d``."""
    num = Fraction(1)
    for a in params.upper:
        num *= pochhammer(a, d + 1)
    den = Fraction(1)
    for b in params.lower:
        den *= pochhammer(b, d)
    from math import factorial

    return -num / (den * factorial(d))


def op_polynomial(n: int, order: int | None = None) -> PowerSeries:
    """``p_n(t) = -4/(2n+1)^2 C(-1/2,n)^{-2} sum_{k<=n} C(-1/2,k)^2 t^k``.

    Solves ``D_O p_n = t^n`` for ``D_O = t(1-t)∂² + (1-2t)∂ - 1/4``.
    """
    lead = Fraction(-4, (2 * n + 1) ** 2) / binom_half(n) ** 2
    coeffs = [lead * binom_half(k) ** 2 for k in range(n + 1)]
    return PowerSeries.from_coefficients(coeffs, n + 1 if order is None else order)


def inhom_solve(params: HyperParams, rhs_coeffs: Sequence, C, N: int) -> PowerSeries:
    """Power-series solution of ``hgd(params) f = sum c_n z^n/n!`` with ``f(0) = C``.

    ``f_n = (C + sum_{k<n} c_k (b)_k/(a)_{k+1}) (a)_n/(b)_n / n!``, returned
    through order ``N``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    c = [as_fraction(x) for x in rhs_coeffs]
    if len(c) < N:
        raise ValueError(f"need at least N={N} right-hand-side coefficients")
    C = as_fraction(C)
    out = []
    acc = C
    coef = Fraction(1)          # (a)_n / ((b)_n n!)
    bk_over_ak1 = Fraction(1)   # (b)_k / (a)_{k+1}, built incrementally
    a_first = Fraction(1)
    for a in params.upper:
        a_first *= a
    if a_first == 0:
        raise ZeroDivisionError("(a)_1 vanishes; the particular solution is undefined")
    bk_over_ak1 = 1 / a_first
    for n in range(N + 1):
        out.append(acc * coef)
        if n == N:
            break
        acc += c[n] * bk_over_ak1
        coef *= params.ratio(n)
        # advance (b)_k/(a)_{k+1} from k=n to k=n+1
        num = Fraction(1)
        for b in params.lower:
            num *= b + n
        den = Fraction(1)
        for a in params.upper:
            den *= a + n + 1
        if den == 0:
            raise ZeroDivisionError(f"(a)_{n + 2} vanishes")
        bk_over_ak1 *= num / den
    return PowerSeries(tuple(out))


def moebius_pullback(phi: PowerSeries) -> PowerSeries:
    """``phi(x/(1+x)) / sqrt(1+x)`` as a series in ``x``."""
    N = phi.order
    inner = PowerSeries(tuple(Fraction(0) if n == 0 else Fraction((-1) ** (n - 1)) for n in range(N + 1)))
    return phi.compose(inner) * PowerSeries.binomial(Fraction(-1, 2), N)


# ---------------------------------------------------------------------------
# Closed forms of g̃₂, g̃₃
# ---------------------------------------------------------------------------

_QUARTER = Fraction(1, 4)
_S_INF_BOUND = Fraction(2)  # sup_k S_k < 1 + pi^2/12


def _g3_series(y: BigFloat, prec: int) -> BigFloat:
    """``sum_{k>=1} (-1)^k C(-1/2,k)^3 y^k S_k`` for ``0 <= y < 1`` with certified tail."""
    work = prec + 24
    y = y.with_prec(work)
    ymag = Fraction(abs(float(y)) + y.abs_error).limit_denominator(1 << 60) + Fraction(1, 1 << 60)
    if ymag >= 1:
        raise ValueError("argument must satisfy |y| < 1")
    target = Fraction(1, 1 << prec)
    total = BigFloat.exact(0, work)
    ypow = BigFloat.exact(1, work)
    S = Fraction(0)
    c = Fraction(1)  # C(-1/2, k)
    for k in range(1, 200_000):
        S += 1 / ((2 * k - 1) ** 3 * c ** 2)
        c = c * Fraction(-1 - 2 * (k - 1), 2 * k)
        ypow = ypow * y
        coef = (-1) ** k * c ** 3 * S
        total = total + ypow * coef
        # tail over m > k: |C_m|^3 S_m y^m <= |C_{k+1}|^3 * 2 * y^{k+1} / (1 - y)
        cn = abs(c) * Fraction(2 * k + 1, 2 * k + 2)
        tail = cn ** 3 * _S_INF_BOUND * ymag ** (k + 1) / (1 - ymag)
        if tail <= target:
            return total.widen(float(tail) * (1 + 1e-12) + 1e-300)
    raise ConvergenceError("g3 series did not converge")


def gt2_closed(x, prec: int = 128) -> BigFloat:
    """``g̃₂(x) = 2F1(1/4,3/4;1;-x)^2``, evaluated through the Pfaff image
    ``(1+x)^{-1/2} 2F1(1/4,1/4;1;x/(1+x))^2`` so that ``x = 1`` is reachable."""
    work = prec + 16
    xb = x if isinstance(x, BigFloat) else BigFloat.exact(x, work)
    if xb.upper < 0 or xb.lower > 1 + Fraction(1, 1 << 20):
        raise ValueError("g̃₂ closed form is used on 0 <= x <= 1")
    f = hyp2f1_pfaff(_QUARTER, Fraction(3, 4), 1, -xb, work)
    return (f * f).with_prec(prec)


def gt3_closed(x, prec: int = 128) -> BigFloat:
    """``g̃₃(x) = -2 (1+x)^{-1/2} sum_k (-1)^k C(-1/2,k)^3 (x/(1+x))^k S_k``."""
    work = prec + 16
    xb = x if isinstance(x, BigFloat) else BigFloat.exact(x, work)
    if xb.upper < 0 or xb.lower > 1 + Fraction(1, 1 << 20):
        raise ValueError("g̃₃ closed form is used on 0 <= x <= 1")
    onep = 1 + xb
    y = xb / onep
    return (_g3_series(y, work) * -2 / onep.sqrt()).with_prec(prec)


def g3_binomial_sum(y, prec: int = 128) -> BigFloat:
    """``sum_k (-1)^k C(-1/2,k)^3 y^k S_k``; the double sum appearing in ζ_Q(3)."""
    yb = y if isinstance(y, BigFloat) else BigFloat.exact(y, prec + 16)
    return _g3_series(yb, prec)


def elliptic_form(alpha_beta_product, prec: int = 128, max_points: int = 1 << 14) -> BigFloat:
    """Periodic-trapezoid value of the elliptic-integral form of ``2F1(1/4,3/4;1;1/(1-αβ))``.

    With ``c = i b`` and ``b^2 = 1/(αβ-1)``, the average of ``(1 + c cosθ)^{-1/2}``
    over a period equals ``2F1(1/4,3/4;1;c^2)``; its real part is
    ``sqrt((1 + 1/r)/2)/sqrt(r)``, ``r = sqrt(1 + b^2 cos^2 θ)``.  The integrand
    is analytic and ``π``-periodic, so nodes ``θ_j = πj/M`` converge
    geometrically; the error estimate is the difference of the last two levels.
    """
    work = prec + 24
    P = alpha_beta_product if isinstance(alpha_beta_product, BigFloat) else BigFloat.exact(alpha_beta_product, work)
    P = P.with_prec(work)
    if not (P - 1).is_positive():
        raise NotValidatedError("real form needs alpha*beta > 1")
    b2 = 1 / (P - 1)

    def level(M: int) -> BigFloat:
        total = BigFloat.exact(0, work)
        for j in range(M):
            cth = cos_pi(Fraction(j, M), work)
            r = (1 + b2 * cth * cth).sqrt()
            total = total + ((1 + 1 / r) / 2).sqrt() / r.sqrt()
        return total / M

    M = 8
    prev = level(M)
    target = Fraction(1, 1 << prec)
    while M < max_points:
        M *= 2
        cur = level(M)
        diff = abs(cur.mid - prev.mid)
        if diff <= target:
            return cur.widen(float(diff) + 1e-300).with_prec(prec)
        prev = cur
    raise ConvergenceError("elliptic-form trapezoid did not settle")


# ---------------------------------------------------------------------------
# Classical identities
# ---------------------------------------------------------------------------

def clausen_sides(a, b, z, prec: int = 256) -> tuple[BigFloat, BigFloat]:
    """Both sides of ``2F1(a,b;a+b+1/2;z)^2 = 3F2(2a,2b,a+b;2a+2b,a+b+1/2;z)``."""
    a, b = as_fraction(a), as_fraction(b)
    lhs = hyp([a, b], [a + b + Fraction(1, 2)], z, prec)
    rhs = hyp([2 * a, 2 * b, a + b], [2 * a + 2 * b, a + b + Fraction(1, 2)], z, prec)
    return lhs * lhs, rhs


def pfaff_sides(a, b, c, z, prec: int = 256) -> tuple[BigFloat, BigFloat]:
    """Both sides of ``2F1(a,b;c;z) = (1-z)^{-a} 2F1(a,c-b;c;z/(z-1))`` by direct series."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    zb = z if isinstance(z, BigFloat) else BigFloat.exact(z, prec + 16)
    lhs = hyp([a, b], [c], zb, prec)
    w = zb / (zb - 1)
    rhs = hyp([a, c - b], [c], w, prec + 16) * _general_power(1 - zb, -a, prec + 16)
    return lhs, rhs.with_prec(prec)


def _general_power(x: BigFloat, e: Fraction, prec: int) -> BigFloat:
    e = as_fraction(e)
    if e.denominator & (e.denominator - 1) == 0:
        return _rational_power(x, e)
    raise ValueError("only dyadic exponents are supported")
