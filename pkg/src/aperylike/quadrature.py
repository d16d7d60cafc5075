"""Numerical evaluation of the integrals defining J_k(n) and w_k(z).

Two forms are supported:

* ``unit_cube``::

    J_k(n) = 2^k ∫_{[0,1]^k} 1/(1-P) ((1-x_1^4)(1-x_2^4...x_k^4)/(1-P)^2)^n dx,   P = x_1^2...x_k^2

* ``two_dim_reduced`` (collapse ``t_2+...+t_k`` into one variable, then
  ``x = e^{-t/2}``, ``y = e^{-s/2}``)::

    J_k(n) = 4/Γ(k-1) ∫∫ (-2 ln y)^{k-2}/(1-x²y²) ((1-x^4)(1-y^4)/(1-x²y²)^2)^n dx dy

Each axis uses the double-exponential map ``x = 1 - u``,
``u = 1/(1+exp(π sinh t))``, and all of ``1-x²``, ``1-x⁴``, ``1-P`` are formed
from ``u`` directly so the corner ``x = 1`` keeps full relative accuracy.  The
trapezoid rule in ``t`` is refined by halving ``h`` until two successive
levels differ by less than ``tol/2``; that difference is reported as the
error estimate (an estimate, not a bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numeric import BigFloat
from .zeta_values import riemann_zeta

FORMS = ("unit_cube", "two_dim_reduced")
_T_MAX = 4.5


class ToleranceNotReached(ArithmeticError):
    def __init__(self, best: float, estimate: float, tol: float):
        super().__init__(f"tolerance {tol:g} not reached: best {best!r}, estimate {estimate:.3g}")
        self.best = best
        self.estimate = estimate


@dataclass(frozen=True)
class IntegralSpec:
    k: int
    n: int = 0
    form: str | None = None
    target_tol: float = 1e-10

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        form = self.form or ("unit_cube" if self.k == 2 else "two_dim_reduced")
        if form not in FORMS:
            raise ValueError(f"unknown form {form!r}")
        if form == "unit_cube" and self.k > 4:
            raise ValueError("unit_cube form is supported for k <= 4")
        object.__setattr__(self, "form", form)


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    form: str
    nodes: int
    step: float

    def to_dict(self) -> dict:
        return dict(value=self.value, error_estimate=self.error_estimate, form=self.form,
                    nodes=self.nodes, step=self.step)


@dataclass
class _Axis:
    w: np.ndarray    # dx/dt times the trapezoid step
    q: np.ndarray    # 1 - x^2
    q4: np.ndarray   # 1 - x^4
    lnx: np.ndarray  # ln x


def _axis(h: float) -> _Axis:
    m = int(math.ceil(_T_MAX / h))
    t = np.arange(-m, m + 1) * h
    ps = math.pi * np.sinh(t)
    e = np.exp(-np.abs(ps))
    # u = 1 - x = 1/(1+exp(ps)), written to avoid overflow on both sides
    u = np.where(ps >= 0, e / (1 + e), 1 / (1 + e))
    x = np.where(ps >= 0, 1 / (1 + e), e / (1 + e))
    lnx = np.where(ps >= 0, -np.log1p(e), -np.abs(ps) - np.log1p(e))
    w = h * math.pi * np.cosh(t) * u * x
    q = u * (2 - u)
    q4 = q * (2 - q)
    keep = w > 0
    return _Axis(w[keep], q[keep], q4[keep], lnx[keep])


def _one_minus_prod(cs):
    """``1 - prod(1 - c_i)`` by ``c <- c + q - cq``."""
    acc = cs[0]
    for q in cs[1:]:
        acc = acc + q - acc * q
    return acc


def _level(spec_k: int, form: str, h: float, kernel_fn) -> tuple[float, int]:
    ax = _axis(h)
    L = ax.w.size
    if form == "two_dim_reduced" or spec_k == 2:
        X = (ax.q[:, None], ax.q4[:, None], ax.w[:, None])
        Y = (ax.q[None, :], ax.q4[None, :], ax.w[None, :], ax.lnx[None, :])
        one_m = _one_minus_prod([X[0], Y[0]])
        K = X[1] * Y[1] / one_m ** 2
        base = X[2] * Y[2] / one_m
        if form == "two_dim_reduced" and spec_k > 2:
            base = base * (-2 * Y[3]) ** (spec_k - 2) / math.gamma(spec_k - 1)
        return 4.0 * math.fsum(np.sum(base * kernel_fn(K), axis=1)), L * L
    # unit cube, k = 3 or 4: sum slab by slab over the first axis
    total = []
    # tensor grid over the remaining axes
    grids_q = np.meshgrid(*([ax.q] * (spec_k - 1)), indexing="ij", sparse=True)
    grids_q4 = np.meshgrid(*([ax.q4] * (spec_k - 1)), indexing="ij", sparse=True)
    grids_w = np.meshgrid(*([ax.w] * (spec_k - 1)), indexing="ij", sparse=True)
    w_rest = grids_w[0]
    for g in grids_w[1:]:
        w_rest = w_rest * g
    q_rest = _one_minus_prod(list(grids_q))        # 1 - prod_{i>=2} x_i^2
    q4_rest = _one_minus_prod(list(grids_q4))      # 1 - prod_{i>=2} x_i^4
    for i in range(L):
        one_m = q_rest + ax.q[i] - q_rest * ax.q[i]
        K = ax.q4[i] * q4_rest / one_m ** 2
        total.append(ax.w[i] * float(np.sum(w_rest / one_m * kernel_fn(K))))
    return 2.0 ** spec_k * math.fsum(total), L ** spec_k


def _integrate(k: int, form: str, tol: float, kernel_fn, max_level: int | None = None) -> QuadResult:
    if max_level is None:
        max_level = 8 if (form == "two_dim_reduced" or k == 2) else (6 if k == 3 else 4)
    h = 0.5
    prev, _ = _level(k, form, h, kernel_fn)
    diff = math.inf
    cur, nodes = prev, 0
    for _ in range(max_level):
        h /= 2
        cur, nodes = _level(k, form, h, kernel_fn)
        diff = abs(cur - prev)
        if diff < tol / 2:
            # the estimate is floored at a few ulps of the value
            return QuadResult(cur, max(diff, 4e-16 * abs(cur)), form, nodes, h)
        prev = cur
    raise ToleranceNotReached(cur, diff, tol)


def jk_integral(spec: IntegralSpec) -> QuadResult:
    """``J_k(n)`` by double-exponential quadrature."""
    n = spec.n
    return _integrate(spec.k, spec.form, spec.target_tol, lambda K: K ** n)


def wk_integral(k: int, z: float, tol: float = 1e-8, form: str | None = None) -> QuadResult:
    """``w_k(z) = sum_n J_k(n) z^n`` via the geometric-sum kernel ``1/(1 - zK)``."""
    if not -1 < z < 1:
        raise ValueError("|z| must be < 1")
    spec = IntegralSpec(k, 0, form, tol)
    return _integrate(k, spec.form, tol, lambda K: 1.0 / (1.0 - z * K))


# ---------------------------------------------------------------------------
# Exact references and closed forms
# ---------------------------------------------------------------------------

def jk_exact(k: int, n: int, prec: int = 128) -> BigFloat:
    """``J_2(n) = 3ζ(2)J̃₂(n)`` and ``J_3(n) = J̃₃(n) + 7ζ(3)J̃₂(n)``."""
    from . import sequences

    if k == 2:
        return riemann_zeta(2, prec) * 3 * sequences.jt2_at(n)
    if k == 3:
        return riemann_zeta(3, prec) * 7 * sequences.jt2_at(n) + sequences.jt3_at(n)
    raise ValueError("exact values are available for k in {2, 3}")


def jk1_closed(k: int, prec: int = 128) -> BigFloat:
    """``J_k(1) = (3/4)(ζ(k,1/2) + sum_{m=1}^{[k/2]-1} 4^{-m} ζ(k-2m,1/2)) + (1-(-1)^k)/2^{k-1}``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    work = prec + 16

    def hz(s):
        return riemann_zeta(s, work) * ((1 << s) - 1)

    acc = hz(k)
    for m in range(1, k // 2):
        acc = acc + hz(k - 2 * m) * Fraction(1, 4 ** m)
    tail = Fraction(1 - (-1) ** k, 2 ** (k - 1))
    return (acc * Fraction(3, 4) + tail).with_prec(prec)


def jk0_closed(k: int, prec: int = 128) -> BigFloat:
    """``J_k(0) = w_k(0) = (2^k - 1) ζ(k)``."""
    return (riemann_zeta(k, prec + 8) * ((1 << k) - 1)).with_prec(prec)


@dataclass
class VerticalCheck:
    k: int
    method: str
    residual: float
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.residual < self.tolerance


def vertical_relation_check(k: int, method: str = "closed", prec: int = 128, tol: float | None = None) -> VerticalCheck:
    """``J_{k-2}(1) - 4 J_k(1) + 3 J_k(0) = 0``."""
    if k < 4:
        raise ValueError("k must be >= 4")
    if method == "closed":
        r = jk1_closed(k - 2, prec) - jk1_closed(k, prec) * 4 + jk0_closed(k, prec) * 3
        res = abs(float(r.mid)) + float(r.error_bound)
        return VerticalCheck(k, method, res, 1e-25 if tol is None else tol)
    if method == "quadrature":
        qtol = 1e-9
        a = jk_integral(IntegralSpec(k - 2, 1, None, qtol)).value
        b = jk_integral(IntegralSpec(k, 1, None, qtol)).value
        c = jk_integral(IntegralSpec(k, 0, None, qtol)).value
        return VerticalCheck(k, method, abs(a - 4 * b + 3 * c), 1e-6 if tol is None else tol)
    raise ValueError(f"unknown method {method!r}")


def wk_partial(k: int, z: float, N: int, tol: float = 1e-10) -> float:
    """``sum_{n<=N} J_k(n) z^n``: exact tables for ``k <= 3``, quadrature otherwise."""
    if not -1 < z < 1:
        raise ValueError("|z| must be < 1")
    if k in (2, 3):
        return math.fsum(float(jk_exact(k, n, 64)) * z ** n for n in range(N + 1))
    return math.fsum(jk_integral(IntegralSpec(k, n, None, tol)).value * z ** n for n in range(N + 1))
