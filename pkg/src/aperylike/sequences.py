"""Exact Apéry-like sequences J̃₂(n), J̃₃(n), the Apéry numbers, and their series.

Three independent routes are provided for J̃₂ (three-term recurrence,
alternating binomial sum, manifestly positive convolution) and two for J̃₃
(inhomogeneous recurrence, double binomial sum).  All arithmetic is exact.

The recurrences are run on integer numerators over closed-form common
denominators, so no gcd is taken until a value is actually requested:

* ``16^n J̃₂(n)`` is an integer (the binomial form has denominator ``16^k``),
* ``J̃₃(n) D_n`` with ``D_n = 4^n n!^2 (2n-1)!!`` is an integer produced by
  the recurrence without any division.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

from .numeric import BigFloat, PowerSeries, as_fraction, binom_half, format_rational

KINDS = ("J2_norm", "J3_norm", "Apery")
METHODS = ("recurrence", "binomial_sum", "positive_form")


@dataclass(frozen=True)
class ZetaCombination:
    """Exact value ``q0 + q1 * zeta(weight)``."""

    q0: Fraction
    q1: Fraction
    weight: int

    def __post_init__(self):
        if self.weight < 2:
            raise ValueError("weight must be >= 2")
        object.__setattr__(self, "q0", as_fraction(self.q0))
        object.__setattr__(self, "q1", as_fraction(self.q1))

    def _check(self, other: "ZetaCombination"):
        if other.weight != self.weight:
            raise ValueError(f"cannot combine zeta({self.weight}) with zeta({other.weight})")

    def __add__(self, other: "ZetaCombination") -> "ZetaCombination":
        self._check(other)
        return ZetaCombination(self.q0 + other.q0, self.q1 + other.q1, self.weight)

    def __sub__(self, other: "ZetaCombination") -> "ZetaCombination":
        self._check(other)
        return ZetaCombination(self.q0 - other.q0, self.q1 - other.q1, self.weight)

    def scale(self, c) -> "ZetaCombination":
        c = as_fraction(c)
        return ZetaCombination(self.q0 * c, self.q1 * c, self.weight)

    def evaluate(self, prec: int) -> BigFloat:
        from .zeta_values import riemann_zeta

        return riemann_zeta(self.weight, prec + 8) * self.q1 + self.q0

    def __str__(self) -> str:
        return f"{self.q0} + ({self.q1})*zeta({self.weight})"


@dataclass
class SequenceTable:
    """Values ``0..N`` of one sequence produced by one method."""

    kind: str
    method: str
    values: tuple[Fraction, ...]
    _floats: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value"])
        for n, v in enumerate(self.values):
            w.writerow([n, format_rational(v)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "method": self.method,
            "values": [{"index": n, "value": format_rational(v)} for n, v in enumerate(self.values)],
        })

    @classmethod
    def from_json(cls, text: str) -> "SequenceTable":
        d = json.loads(text)
        rows = sorted(d["values"], key=lambda r: r["index"])
        return cls(d["kind"], d["method"], tuple(Fraction(r["value"]) for r in rows))


# ---------------------------------------------------------------------------
# J̃₂
# ---------------------------------------------------------------------------

def _jt2_scaled(N: int) -> list[int]:
    """Integers ``16^n J̃₂(n)`` for ``n <= N`` via the three-term recurrence."""
    X = [1, 12][: N + 1]
    for n in range(2, N + 1):
        a = 8 * n * n - 8 * n + 3
        b = 4 * (n - 1) ** 2
        q, r = divmod(16 * a * X[-1] - 256 * b * X[-2], 4 * n * n)
        if r:
            raise ArithmeticError(f"16^n J2({n}) is not integral; recurrence state corrupted")
        X.append(q)
    return X


def jt2_recurrence(N: int) -> SequenceTable:
    """J̃₂(0..N) from ``4n²J(n) = (8n²-8n+3)J(n-1) - 4(n-1)²J(n-2)``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    X = _jt2_scaled(N)
    return SequenceTable("J2_norm", "recurrence", tuple(Fraction(x, 16 ** n) for n, x in enumerate(X)))


def jt2_at(n: int) -> Fraction:
    return Fraction(_jt2_scaled(n)[n], 16 ** n)


def jt2_binomial(n: int) -> Fraction:
    """``sum_k (-1)^k C(-1/2,k)^2 C(n,k)``, exact."""
    if n < 0:
        raise ValueError("n must be >= 0")
    # C(-1/2,k)^2 = C(2k,k)^2 / 16^k; Horner in 16 over k gives 16^n * value
    acc = 0
    c2k = 1
    cnk = 1
    for k in range(n + 1):
        if k:
            c2k = c2k * 2 * (2 * k - 1) // k
            cnk = cnk * (n - k + 1) // k
        term = c2k * c2k * cnk
        acc = 16 * acc + (-term if k & 1 else term)
    return Fraction(acc, 16 ** n)


def _positive_kernel(N: int) -> list[int]:
    a = []
    c2, c4 = 1, 1
    for k in range(N + 1):
        if k:
            c2 = c2 * 2 * (2 * k - 1) // k
            # C(4k,2k) from C(4k-4,2k-2)
            c4 = c4 * (4 * k) * (4 * k - 1) * (4 * k - 2) * (4 * k - 3) // ((2 * k) * (2 * k - 1)) ** 2
        a.append(c2 * c4)
    return a


def jt2_positive_form(n: int, _kernel: list[int] | None = None) -> Fraction:
    """``2^{-4n} C(2n,n)^{-1} sum_k C(2k,k)C(4k,2k)C(2n-2k,n-k)C(4n-4k,2n-2k)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = _kernel if _kernel is not None and len(_kernel) > n else _positive_kernel(n)
    s = sum(a[k] * a[n - k] for k in range(n + 1))
    return Fraction(s, 16 ** n * comb(2 * n, n))


def jt2_table(N: int, method: str = "recurrence") -> SequenceTable:
    if method == "recurrence":
        return jt2_recurrence(N)
    if method == "binomial_sum":
        return SequenceTable("J2_norm", method, tuple(jt2_binomial(n) for n in range(N + 1)))
    if method == "positive_form":
        ker = _positive_kernel(N)
        return SequenceTable("J2_norm", method, tuple(jt2_positive_form(n, ker) for n in range(N + 1)))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# J̃₃
# ---------------------------------------------------------------------------

def _jt3_scaled(N: int):
    """Yield ``(n, X_n, D_n)`` with ``J̃₃(n) = X_n / D_n`` (not reduced)."""
    yield 0, 0, 1
    if N == 0:
        return
    x_prev, x = 0, 2
    d = 4
    yield 1, x, d
    f3 = 1  # (n-1)!^3
    for n in range(2, N + 1):
        f3 *= (n - 1) ** 3
        a = 8 * n * n - 8 * n + 3
        b = 4 * (n - 1) ** 2
        x_new = (2 * n - 1) * (a * x - b * 4 * (n - 1) ** 2 * (2 * n - 3) * x_prev) + (f3 << (3 * n - 2))
        x_prev, x = x, x_new
        d *= 4 * n * n * (2 * n - 1)
        yield n, x, d


def jt3_recurrence(N: int) -> SequenceTable:
    """J̃₃(0..N) from the inhomogeneous recurrence with forcing ``2^n (n-1)!/(2n-1)!!``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return SequenceTable("J3_norm", "recurrence", tuple(Fraction(x, d) for _, x, d in _jt3_scaled(N)))


def jt3_at(n: int) -> Fraction:
    for m, x, d in _jt3_scaled(n):
        if m == n:
            return Fraction(x, d)
    raise AssertionError("unreachable")


def jt3_values_at(indices) -> dict[int, Fraction]:
    """Exact J̃₃ at selected indices from a single recurrence pass."""
    want = set(indices)
    out = {}
    if not want:
        return out
    for m, x, d in _jt3_scaled(max(want)):
        if m in want:
            out[m] = Fraction(x, d)
    return out


def jt3_float(n: int) -> float:
    for m, x, d in _jt3_scaled(n):
        if m == n:
            return x / d
    raise AssertionError("unreachable")


class Jt3Binomial:
    """Evaluator for the double binomial sum, memoizing the inner prefix sums.

    ``S_k = sum_{j<k} (2j+1)^{-3} C(-1/2,j)^{-2}`` is kept as integers over a
    common denominator, so each ``value(n)`` is a single integer sum.
    """

    def __init__(self):
        self._S = [Fraction(0)]
        self._common = None  # (K, L, [S_k * L])

    def prefix(self, k: int) -> Fraction:
        while len(self._S) <= k:
            j = len(self._S) - 1
            self._S.append(self._S[-1] + 1 / ((2 * j + 1) ** 3 * binom_half(j) ** 2))
        return self._S[k]

    def _scaled(self, n: int):
        if self._common is None or self._common[0] < n:
            K = max(n, 2 * (self._common[0] if self._common else 0))
            self.prefix(K)
            L = 1
            for s in self._S[: K + 1]:
                L = L * s.denominator // _gcd(L, s.denominator)
            self._common = (K, L, [s.numerator * (L // s.denominator) for s in self._S[: K + 1]])
        return self._common

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be >= 0")
        _, L, s = self._scaled(n)
        acc = 0
        c2k = 1
        cnk = 1
        for k in range(n + 1):
            if k:
                c2k = c2k * 2 * (2 * k - 1) // k
                cnk = cnk * (n - k + 1) // k
            term = c2k * c2k * cnk * s[k]
            acc = 16 * acc + (-term if k & 1 else term)
        return Fraction(-2 * acc, 16 ** n * L)


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def jt3_binomial(n: int) -> Fraction:
    """``-2 sum_k (-1)^k C(-1/2,k)^2 C(n,k) sum_{j<k} (2j+1)^{-3} C(-1/2,j)^{-2}``."""
    return Jt3Binomial().value(n)


def jt3_table(N: int, method: str = "recurrence") -> SequenceTable:
    if method == "recurrence":
        return jt3_recurrence(N)
    if method == "binomial_sum":
        ev = Jt3Binomial()
        return SequenceTable("J3_norm", method, tuple(ev.value(n) for n in range(N + 1)))
    raise ValueError(f"unknown method {method!r} for J3")


# ---------------------------------------------------------------------------
# Apéry numbers
# ---------------------------------------------------------------------------

def apery_sum(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def apery_recurrence_values(N: int) -> list[int]:
    """``(n+1)^3 A_{n+1} = (34n^3+51n^2+27n+5) A_n - n^3 A_{n-1}``."""
    A = [1, 5][: N + 1]
    for n in range(1, N):
        num = (34 * n ** 3 + 51 * n ** 2 + 27 * n + 5) * A[n] - n ** 3 * A[n - 1]
        q, r = divmod(num, (n + 1) ** 3)
        if r:
            raise ArithmeticError(f"Apery recurrence left a remainder at n={n + 1}")
        A.append(q)
    return A


def apery(N: int) -> SequenceTable:
    """Apéry numbers by the closed sum, cross-checked against the recurrence."""
    if N < 0:
        raise ValueError("N must be >= 0")
    closed = [apery_sum(n) for n in range(N + 1)]
    rec = apery_recurrence_values(N)
    for n, (a, b) in enumerate(zip(closed, rec)):
        if a != b:
            raise ArithmeticError(f"Apery closed sum and recurrence disagree at n={n}: {a} != {b}")
    return SequenceTable("Apery", "binomial_sum", tuple(Fraction(a) for a in closed))


# ---------------------------------------------------------------------------
# Un-normalized values and generating series
# ---------------------------------------------------------------------------

def j_full(k: int, n: int) -> ZetaCombination:
    """``J₂(n) = 3ζ(2)J̃₂(n)`` and ``J₃(n) = J̃₃(n) + 7ζ(3)J̃₂(n)``."""
    if k == 2:
        return ZetaCombination(0, 3 * jt2_at(n), 2)
    if k == 3:
        return ZetaCombination(jt3_at(n), 7 * jt2_at(n), 3)
    raise ValueError("exact J_k(n) is available for k in {2, 3} only")


def wt_series(k: int, order: int) -> PowerSeries:
    """``w̃_k(z) = sum J̃_k(n) z^n`` truncated at ``order``."""
    table = jt2_recurrence(order) if k == 2 else jt3_recurrence(order) if k == 3 else None
    if table is None:
        raise ValueError("k must be 2 or 3")
    return PowerSeries(table.values)


def gt_series(k: int, order: int) -> PowerSeries:
    """``g̃_k(x) = sum C(-1/2,n) J̃_k(n) x^n`` truncated at ``order``."""
    w = wt_series(k, order)
    return PowerSeries(tuple(binom_half(n) * c for n, c in enumerate(w.coefficients)))


# D_H = z(1-z)^2 d^2 + (1-3z)(1-z) d + z - 3/4
_DH = ([0, 1, -2, 1], [1, -4, 3], [Fraction(-3, 4), 1])
# D_W = 8x^2(1+x)^2 d^3 + 24x(1+x)(1+2x) d^2 + 2(4+27x+27x^2) d + 3(1+2x)
_DW = ([0, 0, 8, 16, 8], [0, 24, 72, 48], [8, 54, 54], [3, 6])


def _apply_poly_operator(polys, s: PowerSeries) -> PowerSeries:
    """``sum_i polys[-1-i](z) * d^i s`` with the coefficient list ordered highest derivative first."""
    deg = len(polys) - 1
    derivs = [s]
    for _ in range(deg):
        derivs.append(derivs[-1].derivative())
    out = None
    for i, poly in enumerate(polys):
        term = derivs[deg - i].mul_poly(poly)
        out = term if out is None else out + term
    return out


def heun_apply(s: PowerSeries) -> PowerSeries:
    """Apply the singly confluent Heun operator; exact through order ``N-1``."""
    if s.order < 2:
        raise ValueError("heun_apply needs truncation order >= 2")
    return _apply_poly_operator(_DH, s)


def dw_apply(s: PowerSeries) -> PowerSeries:
    """Apply the third-order operator annihilating g̃₂; exact through order ``N-1``."""
    if s.order < 3:
        raise ValueError("dw_apply needs truncation order >= 3")
    return _apply_poly_operator(_DW, s)
