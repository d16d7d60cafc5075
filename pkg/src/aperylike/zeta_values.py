"""Riemann zeta values and ζ_Q(2), ζ_Q(3), the sums of λ_n^{-2} and λ_n^{-3}
over the spectrum of the oscillator ``Q`` (see ``spectrum.operator``).

Two independent routes are offered for ζ_Q(k):

* ``closed``: hypergeometric closed forms (g̃₂ through a squared 2F1, g̃₃
  through the double binomial sum), with certified tails;
* ``series``: exact partial sums of the generating functions built from the
  J̃ sequences, plus an estimated tail.

With ``s = α+β``, ``d = α-β``, ``P = αβ`` and ``x = a² = 1/(P-1)``::

    ζ_Q(2) = s²/(2P(P-1)) · 3ζ(2) · (1 + (d/s)² g̃₂(x))
    ζ_Q(3) = s³/(4(P(P-1))^{3/2}) · (7ζ(3)(1 + 3(d/s)² g̃₂(x)) + 3(d/s)² g̃₃(x))

so the leading constant of ζ_Q(2) is 3/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .hypergeometric import g3_binomial_sum, gt2_closed
from .numeric import BigFloat, binom_half, pi


class DomainError(ValueError):
    """Parameters lie outside the validity domain of the requested formula."""


LEADING_CONSTANT_Q2 = Fraction(3, 2)
ALTERNATIVE_CONSTANT_Q2 = Fraction(3, 4)


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def _zeta3_rational(prec: int) -> tuple[Fraction, Fraction]:
    """Partial sum of ``(5/2) sum (-1)^{n-1}/(n^3 C(2n,n))`` and a bound on its tail."""
    target = Fraction(1, 1 << (prec + 8))
    total = Fraction(0)
    n = 1
    while True:
        term = Fraction(5, 2 * n ** 3 * comb(2 * n, n))
        total += term if n % 2 else -term
        nxt = Fraction(5, 2 * (n + 1) ** 3 * comb(2 * n + 2, n + 1))
        if nxt < target:
            # alternating with decreasing terms: tail is at most the first omitted term
            return total, nxt
        n += 1


def _borwein_odd(s: int, prec: int) -> tuple[Fraction, Fraction]:
    """Borwein's alternating-series algorithm for ``ζ(s)``, real ``s > 1``."""
    one_m = 1 - Fraction(2) ** (1 - s)
    n = 8
    # error <= 3 / (3+sqrt 8)^n / |1 - 2^{1-s}|, and 3+sqrt(8) > 5.82
    while Fraction(3) / (Fraction(582, 100) ** n * one_m) > Fraction(1, 1 << (prec + 8)):
        n += 4
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(factorial(n + i - 1) * 4 ** i, factorial(n - i) * factorial(2 * i))
        d.append(n * acc)
    dn = d[n]
    total = Fraction(0)
    for k in range(n):
        total += (-1) ** k * (d[k] - dn) / Fraction((k + 1) ** s)
    value = -total / (dn * one_m)
    return value, Fraction(3) / (Fraction(582, 100) ** n * one_m)


def riemann_zeta(k: int, prec: int = 128) -> BigFloat:
    """``ζ(k)`` for an integer ``k >= 2`` with a certified error bound.

    ``ζ(2m)`` comes from Bernoulli numbers and π; ``ζ(3)`` from the
    central-binomial series; other odd values from Borwein's algorithm.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    work = prec + 16
    if k % 2 == 0:
        coef = abs(bernoulli(k)) * Fraction(2) ** (k - 1) / factorial(k)
        return (pi(work) ** k * coef).with_prec(prec)
    if k == 3:
        val, tail = _zeta3_rational(prec)
    else:
        val, tail = _borwein_odd(k, prec)
    return BigFloat.exact(val, work).widen(float(tail) * 1.01 + 1e-300).with_prec(prec)


def hurwitz_half(k: int, prec: int = 128) -> BigFloat:
    """``ζ(k, 1/2) = (2^k - 1) ζ(k)``."""
    return (riemann_zeta(k, prec + 8) * ((1 << k) - 1)).with_prec(prec)


def zeta_euler_maclaurin(k: int, prec: int = 128, N: int | None = None) -> BigFloat:
    """Independent ``ζ(k)`` by Euler-Maclaurin summation of ``sum n^{-k}``.

    For ``f(x) = x^{-k}`` every derivative has constant sign, so the remainder
    after the last kept Bernoulli term is bounded by the first omitted one.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if N is None:
        N = max(20, prec // 4)
    s = k
    total = sum(Fraction(1, n ** s) for n in range(1, N))
    total += Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    target = Fraction(1, 1 << (prec + 8))
    rising = Fraction(s)          # s(s+1)...(s+2j-2)
    j = 1
    while True:
        term = bernoulli(2 * j) / factorial(2 * j) * rising / Fraction(N) ** (s + 2 * j - 1)
        total += term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        nxt = abs(bernoulli(2 * j + 2) / factorial(2 * j + 2) * rising / Fraction(N) ** (s + 2 * j + 1))
        if nxt < target:
            break
        j += 1
        if j > 4 * N:
            raise ArithmeticError("Euler-Maclaurin expansion stopped decreasing; increase N")
    return BigFloat.exact(total, prec + 16).widen(float(nxt) * 2 + 1e-300).with_prec(prec)


# ---------------------------------------------------------------------------
# System parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SystemParameters:
    """Positive couplings ``α, β`` (exact rationals or BigFloats) with ``αβ > 1``."""

    alpha: object
    beta: object

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not isinstance(v, BigFloat):
                object.__setattr__(self, name, Fraction(v))
        for v in (self.alpha, self.beta):
            if self._value(v, 64).upper <= 0:
                raise DomainError("alpha and beta must be positive")
        P = self.product(64)
        if P.upper <= 1:
            raise DomainError("alpha*beta must exceed 1")

    @staticmethod
    def _value(v, prec: int) -> BigFloat:
        return v.with_prec(max(prec, v.prec)) if isinstance(v, BigFloat) else BigFloat.exact(v, prec)

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, Fraction) and isinstance(self.beta, Fraction)

    def a(self, prec: int) -> BigFloat:
        return self._value(self.alpha, prec)

    def b(self, prec: int) -> BigFloat:
        return self._value(self.beta, prec)

    def product(self, prec: int) -> BigFloat:
        if self.exact:
            return BigFloat.exact(self.alpha * self.beta, prec)
        return self.a(prec) * self.b(prec)

    def gamma(self, prec: int) -> BigFloat:
        """``γ = (αβ)^{-1/2}``."""
        return 1 / self.product(prec).sqrt()

    def a_param(self, prec: int) -> BigFloat:
        """``a = (αβ-1)^{-1/2}``."""
        return 1 / (self.product(prec) - 1).sqrt()

    def x(self, prec: int):
        """``a² = 1/(αβ-1)``; exact when the couplings are rational."""
        if self.exact:
            return 1 / (self.alpha * self.beta - 1)
        return 1 / (self.product(prec) - 1)

    def swapped(self) -> "SystemParameters":
        return SystemParameters(self.beta, self.alpha)

    def require_closed_domain(self):
        # reject only when alpha*beta is certainly below 2
        if self.product(128).upper < 2:
            raise DomainError("outside validity domain: closed forms need alpha*beta >= 2")

    def require_series_domain(self):
        if not (self.product(128) - 2).is_positive():
            raise DomainError("outside validity domain: the series path needs alpha*beta > 2")


def _shape(params: SystemParameters, prec: int):
    s = params.a(prec) + params.b(prec)
    d = params.a(prec) - params.b(prec)
    P = params.product(prec)
    r2 = (d / s).square()
    return s, d, P, r2


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def zeta_q2(params: SystemParameters, prec: int = 128, constant: Fraction = LEADING_CONSTANT_Q2) -> BigFloat:
    """``c ζ(2) (α+β)²/(αβ(αβ-1)) (1 + ((α-β)/(α+β))² 2F1(1/4,3/4;1;1/(1-αβ))²)`` with ``c = 3/2``."""
    params.require_closed_domain()
    work = prec + 32
    s, d, P, r2 = _shape(params, work)
    pref = s.square() / (P * (P - 1)) * riemann_zeta(2, work) * constant
    if d.mid == 0 and d.error_bound == 0:
        return pref.with_prec(prec)
    g2 = gt2_closed(params.x(work), work)
    return (pref * (1 + r2 * g2)).with_prec(prec)


def zeta_q3(params: SystemParameters, prec: int = 128) -> BigFloat:
    """Two-term closed form: the 2F1-squared part and the double binomial sum in ``-1/(αβ)``."""
    params.require_closed_domain()
    work = prec + 32
    s, d, P, r2 = _shape(params, work)
    PP1 = P * (P - 1)
    t1 = riemann_zeta(3, work) * Fraction(7, 4) * s ** 3 / (PP1 * PP1.sqrt())
    if d.mid == 0 and d.error_bound == 0:
        return t1.with_prec(prec)
    g2 = gt2_closed(params.x(work), work)
    t1 = t1 * (1 + 3 * r2 * g2)
    B = g3_binomial_sum(1 / P, work)
    t2 = s * d.square() * B * Fraction(-3, 2) / (P.square() * (P - 1))
    return (t1 + t2).with_prec(prec)


def zeta_q(k: int, params: SystemParameters, prec: int = 128) -> BigFloat:
    if k == 2:
        return zeta_q2(params, prec)
    if k == 3:
        return zeta_q3(params, prec)
    raise ValueError("closed forms exist for k in {2, 3} only")


def zeta_q_equal(k: int, alpha, prec: int = 128) -> BigFloat:
    """``α = β``: the spectrum is ``sqrt(α²-1)(n+1/2)`` twice, so ζ_Q(k) = 2(2^k-1)ζ(k)/(α²-1)^{k/2}."""
    a = alpha if isinstance(alpha, BigFloat) else BigFloat.exact(alpha, prec + 16)
    w = (a.square() - 1).sqrt() ** k
    return (riemann_zeta(k, prec + 16) * (2 * ((1 << k) - 1)) / w).with_prec(prec)


# ---------------------------------------------------------------------------
# Series route
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesValue:
    value: BigFloat
    tail_estimate: float
    terms: int


def _gt_partial(k: int, x, N: int, prec: int) -> tuple[BigFloat, float]:
    """``sum_{n<N} C(-1/2,n) J̃_k(n) x^n`` and an estimated tail ``2|t_N|/(1-x)``."""
    from . import sequences

    if k == 2:
        vals = list(sequences.jt2_recurrence(N).values)
    else:
        vals = list(sequences.jt3_recurrence(N).values)
    coeffs = [binom_half(n) * vals[n] for n in range(N + 1)]
    work = prec + 16
    if isinstance(x, Fraction):
        total = Fraction(0)
        for c in reversed(coeffs[:N]):
            total = total * x + c
        part = BigFloat.exact(total, work)
        xf = float(x)
        last = abs(float(coeffs[N]) * xf ** N)
    else:
        part = BigFloat.exact(0, work)
        for c in reversed(coeffs[:N]):
            part = part * x + c
        xf = float(x)
        last = abs(float(coeffs[N]) * xf ** N)
    tail = 2 * last / max(1e-300, 1 - abs(xf))
    return part, tail


def zeta_q_series(k: int, params: SystemParameters, N: int = 200, prec: int = 128) -> SeriesValue:
    """ζ_Q(k) from exact partial sums of g̃₂, g̃₃; the returned error bound includes the tail estimate."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if N < 1:
        raise ValueError("N must be >= 1")
    params.require_series_domain()
    work = prec + 32
    s, d, P, r2 = _shape(params, work)
    x = params.x(work)
    tail_total = 0.0
    if k == 2:
        pref = s.square() / (2 * P * (P - 1))
        z2 = riemann_zeta(2, work)
        g2, t2 = _gt_partial(2, x, N, work)
        val = pref * 3 * z2 * (1 + r2 * g2)
        tail_total = abs(float(pref * 3 * z2 * r2)) * t2
    else:
        PP1 = P * (P - 1)
        pref = s ** 3 / (4 * PP1 * PP1.sqrt())
        z3 = riemann_zeta(3, work)
        g2, t2 = _gt_partial(2, x, N, work)
        g3, t3 = _gt_partial(3, x, N, work)
        val = pref * (7 * z3 * (1 + 3 * r2 * g2) + 3 * r2 * g3)
        tail_total = abs(float(pref * r2)) * (21 * float(z3) * t2 + 3 * t3)
    return SeriesValue(val.widen(tail_total).with_prec(prec), tail_total, N)


def adjudicate_leading_constant(prec: int = 128) -> dict:
    """Compare both candidate constants against the α=β=√2 identity ζ_Q(2) = 6ζ(2)."""
    r2 = BigFloat.exact(2, prec + 32).sqrt()
    params = SystemParameters(r2, r2)
    target = riemann_zeta(2, prec) * 6
    out = {}
    for c in (LEADING_CONSTANT_Q2, ALTERNATIVE_CONSTANT_Q2):
        v = zeta_q2(params, prec, constant=c)
        out[str(c)] = {"value": v, "residual": abs(float(v - target)), "consistent": v.overlaps(target)}
    return out
