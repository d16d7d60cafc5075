"""Congruence properties of J̃₂ and J̃₃ modulo primes and prime powers.

Long scans (``n`` up to ``p^3``) avoid exact rationals: J̃₂ is tracked
projectively as ``X_n / D_n`` where ``D_n`` is the product of the p-free parts
``u_k`` of ``4k²``.  Dividing the three-term recurrence by ``4n² = p^{v_n} u_n``
gives::

    X_n = (a_n X_{n-1} - 4(n-1)² u_{n-1} X_{n-2}) / p^{v_n},  a_n = 8n²-8n+3

which is exact modulo a power of ``p`` that drops by ``v_n`` per step.  Starting
at ``p^R`` with ``R = 2 sum_i floor(N/p^i) + r`` leaves at least ``r`` digits.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial
from math import comb, factorial

from .. import sequences
from .primes import odd_primes_up_to, require_odd_prime
from .residues import DenominatorDivisibleError, DigitExpansion, Residue, legendre, rat_mod


@dataclass
class Verdict:
    """One machine-readable scan result."""

    check: str
    p: int
    holds: bool
    params: dict = field(default_factory=dict)
    residues: dict = field(default_factory=dict)
    conjectural: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


# ---------------------------------------------------------------------------
# Residues of J̃₂
# ---------------------------------------------------------------------------

def _legendre_sum(N: int, p: int) -> int:
    s, q = 0, p
    while q <= N:
        s += N // q
        q *= p
    return s


def jt2_residues_padic(p: int, N: int, r: int = 1) -> list[int]:
    """``J̃₂(n) mod p^r`` for ``0 <= n <= N`` by the p-adic projective recurrence."""
    require_odd_prime(p)
    if N < 0:
        return []
    prec = 2 * _legendre_sum(N, p) + r
    M = p ** prec
    out_mod = p ** r
    X = [1, 3]
    D = [1, 4]
    res = [1, 3 * pow(4, -1, out_mod) % out_mod][: N + 1]
    u_prev = 4
    for n in range(2, N + 1):
        v, u = 0, 4 * n * n
        while u % p == 0:
            u //= p
            v += 1
        y = ((8 * n * n - 8 * n + 3) * X[1] - 4 * (n - 1) ** 2 * u_prev * X[0]) % M
        if v:
            q = p ** v
            if y % q:
                raise ArithmeticError("p-adic recurrence lost divisibility; precision too small")
            prec -= v
            M = p ** prec
            y = (y // q) % M
        Dn = D[1] * u % M
        X = [X[1] % M, y]
        D = [D[1] % M, Dn]
        u_prev = u
        res.append(y * pow(Dn, -1, out_mod) % out_mod)
    if prec < r:
        raise ArithmeticError("insufficient p-adic precision")
    return res


def jt2_residues_exact(p: int, N: int, r: int = 1) -> list[int]:
    """Same residues from the exact integers ``16^n J̃₂(n)``."""
    require_odd_prime(p)
    m = p ** r
    inv16 = pow(16, -1, m)
    out = []
    scale = 1
    for x in sequences._jt2_scaled(N):
        out.append(x * scale % m)
        scale = scale * inv16 % m
    return out


def jt2_residues(p: int, N: int, r: int = 1, method: str = "padic") -> list[int]:
    if method == "padic":
        return jt2_residues_padic(p, N, r)
    if method == "exact":
        return jt2_residues_exact(p, N, r)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Digit criterion
# ---------------------------------------------------------------------------

def prop61_check(p: int, n: int) -> bool:
    """True when some base-p digit of ``n`` equals ``(p-1)/2``; this forces J̃₂(n) ≡ 0 mod p."""
    require_odd_prime(p)
    if p % 4 != 3:
        raise ValueError("the digit criterion is stated for p ≡ 3 mod 4")
    return (p - 1) // 2 in DigitExpansion.of(n, p).digits


def prop61_scan(p: int, n_max: int | None = None) -> Verdict:
    """Check the digit criterion for every ``n <= n_max`` (default ``p^3 - 1``)."""
    if n_max is None:
        n_max = p ** 3 - 1
    res = jt2_residues_padic(p, n_max, 1)
    failures = [n for n in range(n_max + 1) if prop61_check(p, n) and res[n] != 0]
    extra = [n for n in range(n_max + 1) if res[n] == 0 and not prop61_check(p, n)]
    return Verdict("prop61", p, not failures, {"n_max": n_max},
                   {"failures": failures, "zeros_without_digit": extra[:50],
                    "zeros_without_digit_count": len(extra)})


def zeros_mod_p(p: int, n_max: int) -> list[int]:
    """All ``n <= n_max`` with ``J̃₂(n) ≡ 0 mod p``."""
    return [n for n, v in enumerate(jt2_residues_padic(p, n_max, 1)) if v == 0]


def digit_product_check(p: int, n: int) -> bool:
    """``J̃₂(n) ≡ prod_j J̃₂(n_j) mod p`` over the base-p digits of ``n``."""
    base = jt2_residues_exact(p, p - 1, 1)
    prod = 1
    for d in DigitExpansion.of(n, p).digits:
        prod = prod * base[d] % p
    return jt2_residues_exact(p, n, 1)[n] == prod


# ---------------------------------------------------------------------------
# Value at (p-1)/2
# ---------------------------------------------------------------------------

def jt2_halfp_value(p: int) -> Residue:
    """``J̃₂((p-1)/2) mod p`` from the exact value."""
    require_odd_prime(p)
    return rat_mod(sequences.jt2_at((p - 1) // 2), p, 1)


def halfp_formula(p: int) -> Residue:
    """0 if ``p ≡ 3 mod 4``, else ``-((p-1)/4)!^{-4} mod p``."""
    require_odd_prime(p)
    if p % 4 == 3:
        return Residue(0, p, 1)
    f = factorial((p - 1) // 4) % p
    return Residue(-pow(f, -4, p) % p, p, 1)


# ---------------------------------------------------------------------------
# Higher congruences
# ---------------------------------------------------------------------------

def thm62_j2_check(p: int, m: int, r: int, method: str = "exact") -> bool:
    """``J̃₂(m p^r) ≡ J̃₂(m p^{r-1}) mod p^r``."""
    require_odd_prime(p)
    if m < 1 or r < 1:
        raise ValueError("m and r must be positive")
    res = jt2_residues(p, m * p ** r, r, method)
    return res[m * p ** r] == res[m * p ** (r - 1)]


def j3_scaled_residue(p: int, r: int, value: Fraction | None = None) -> Residue:
    """``J̃₃(p^r) p^{3r} mod p^r``; raises if ``p`` survives in the denominator."""
    if value is None:
        value = sequences.jt3_at(p ** r)
    return rat_mod(value * Fraction(p) ** (3 * r), p, r)


def thm62_j3_check(p: int, r: int, values: dict | None = None) -> bool:
    """``J̃₃(p^r) p^{3r} ≡ J̃₃(p^{r-1}) p^{3(r-1)} mod p^r``."""
    require_odd_prime(p)
    if r < 1:
        raise ValueError("r must be positive")
    if values is None:
        values = sequences.jt3_values_at([p ** r, p ** (r - 1)])
    hi = rat_mod(values[p ** r] * Fraction(p) ** (3 * r), p, r)
    lo = rat_mod(values[p ** (r - 1)] * Fraction(p) ** (3 * (r - 1)), p, r)
    return hi.value == lo.value


def _thm62_for_prime(p: int, r_max: int, m_max: int) -> list[Verdict]:
    out = []
    res = jt2_residues_padic(p, m_max * p ** r_max, r_max)
    for r in range(1, r_max + 1):
        mod = p ** r
        for m in range(1, m_max + 1):
            a, b = res[m * p ** r] % mod, res[m * p ** (r - 1)] % mod
            out.append(Verdict("thm62_j2", p, a == b, {"m": m, "r": r}, {"hi": a, "lo": b}))
    vals = sequences.jt3_values_at([p ** r for r in range(r_max + 1)])
    for r in range(1, r_max + 1):
        try:
            ok = thm62_j3_check(p, r, vals)
        except DenominatorDivisibleError:
            ok = False
        out.append(Verdict("thm62_j3", p, ok, {"r": r}))
    return out


def thm62_scan(p_max: int, r_max: int, m_max: int, threads: int = 1) -> list[Verdict]:
    fn = partial(_thm62_for_prime, r_max=r_max, m_max=m_max)
    return [v for chunk in map_primes(fn, odd_primes_up_to(p_max), threads) for v in chunk]


def _supercong_for_prime(p: int, m_max: int, r_max: int) -> list[tuple[int, int, int]]:
    out = []
    res = jt2_residues_padic(p, m_max * p ** r_max, r_max + 1)
    for m in range(1, m_max + 1):
        for r in range(1, r_max + 1):
            mod = p ** (r + 1)
            if res[m * p ** r] % mod != res[m * p ** (r - 1)] % mod:
                out.append((p, m, r))
    return out


def supercong_counterexample_scan(p_max: int, m_max: int, r_max: int, threads: int = 1) -> list[tuple[int, int, int]]:
    """Triples where ``J̃₂(m p^r) ≢ J̃₂(m p^{r-1}) mod p^{r+1}``."""
    if m_max < 1 or r_max < 1:
        return []
    fn = partial(_supercong_for_prime, m_max=m_max, r_max=r_max)
    return [t for chunk in map_primes(fn, odd_primes_up_to(p_max), threads) for t in chunk]


# ---------------------------------------------------------------------------
# Conjectural sums
# ---------------------------------------------------------------------------

def rv_sum_residue(p: int) -> Residue:
    """``sum_{k<p} J̃₂(k)² mod p³`` from exact values."""
    require_odd_prime(p)
    s = sum(v * v for v in sequences.jt2_recurrence(p - 1).values)
    return rat_mod(s, p, 3)


def rv_conjecture_check(p: int) -> bool:
    """``sum_{k<p} J̃₂(k)² ≡ (-1/p) mod p³``; numerical evidence only, not a theorem."""
    return rv_sum_residue(p).value == legendre(-1, p) % p ** 3


def mortenson_check(p: int) -> bool:
    """The classical ``sum_{k<p} 2^{-4k} C(2k,k)² ≡ (-4/p) mod p²``."""
    require_odd_prime(p)
    s = sum(Fraction(comb(2 * k, k) ** 2, 16 ** k) for k in range(p))
    return rat_mod(s, p, 2).value == legendre(-4, p) % p ** 2


def _rv_verdict(p: int) -> Verdict:
    res = rv_sum_residue(p)
    target = legendre(-1, p) % p ** 3
    return Verdict("rv", p, res.value == target, {}, {"sum": res.value, "target": target}, True)


def rv_scan(p_max: int, threads: int = 1) -> list[Verdict]:
    return map_primes(_rv_verdict, odd_primes_up_to(p_max), threads)


# ---------------------------------------------------------------------------
# Parallel driver
# ---------------------------------------------------------------------------

def map_primes(fn, primes, threads: int = 1) -> list:
    """Apply ``fn`` to each prime, in worker processes when ``threads > 1``."""
    primes = list(primes)
    if threads <= 1 or len(primes) <= 1:
        return [fn(p) for p in primes]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, primes))


def prop61_primes(p_max: int) -> list[int]:
    return [p for p in odd_primes_up_to(p_max) if p % 4 == 3]
