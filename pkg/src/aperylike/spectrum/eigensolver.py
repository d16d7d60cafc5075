"""Symmetric eigenvalue routines: Householder tridiagonalization, implicit-shift
QL on tridiagonal matrices, Sturm-sequence bisection, and inverse iteration."""

from __future__ import annotations

import math

import numpy as np


class EigenConvergenceError(ArithmeticError):
    """The QL iteration exceeded its iteration cap."""


def householder_tridiagonalize(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a dense symmetric matrix to tridiagonal ``(d, e)`` by Householder reflections.

    ``e[i]`` couples rows ``i`` and ``i+1``.
    """
    A = np.array(M, dtype=float, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    for k in range(n - 2):
        x = A[k + 1 :, k]
        alpha = -math.copysign(np.linalg.norm(x), x[0] if x[0] != 0 else 1.0)
        if alpha == 0:
            continue
        v = x.copy()
        v[0] -= alpha
        vn = np.dot(v, v)
        if vn == 0:
            continue
        v /= math.sqrt(vn)
        # two-sided reflection with H = I - 2vv^T on the trailing block
        S = A[k + 1 :, k + 1 :]
        p = S @ v
        K = np.dot(v, p)
        w = 2 * (p - K * v)
        S -= np.outer(v, w) + np.outer(w, v)
        A[k + 1 :, k] = 0
        A[k, k + 1 :] = 0
        A[k + 1, k] = A[k, k + 1] = alpha
    d = np.diag(A).copy()
    e = np.diag(A, 1).copy()
    return d, e


def tridiagonal_ql(d, e, max_iter: int = 60) -> list[float]:
    """Eigenvalues of the symmetric tridiagonal matrix ``(d, e)`` by implicit-shift QL."""
    d = [float(x) for x in d]
    n = len(d)
    e = [float(x) for x in e] + [0.0]
    if len(e) != n:
        raise ValueError("off-diagonal must have length n-1")
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise EigenConvergenceError(f"no convergence for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


def sturm_count(d: np.ndarray, e: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Number of eigenvalues below each entry of ``x`` (vectorized over ``x``)."""
    x = np.asarray(x, dtype=float)
    count = np.zeros(x.shape, dtype=np.int64)
    q = d[0] - x
    tiny = 1e-300
    count += q < 0
    for i in range(1, len(d)):
        q = np.where(q == 0, tiny, q)
        q = d[i] - x - e[i - 1] ** 2 / q
        count += q < 0
    return count


def bisection_eigenvalues(d, e, tol: float = 1e-13) -> np.ndarray:
    """All eigenvalues by simultaneous Sturm bisection; an independent check on QL."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = len(d)
    ae = np.abs(np.concatenate([[0.0], e, [0.0]]))
    radius = ae[:-1] + ae[1:]
    lo = np.full(n, float(np.min(d - radius)))
    hi = np.full(n, float(np.max(d + radius)))
    k = np.arange(n)
    span = hi[0] - lo[0]
    steps = max(1, int(math.ceil(math.log2(max(span, 1e-300) / (tol * max(1.0, np.max(np.abs(hi))))))) + 2)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        below = sturm_count(d, e, mid) > k
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def tridiagonal_inverse_iteration(d, e, lam: float, iters: int = 3) -> np.ndarray:
    """Unit eigenvector for eigenvalue ``lam`` via shifted tridiagonal solves (Thomas algorithm)."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    n = len(d)
    shift = lam + 1e-10 * max(1.0, abs(lam))
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iters):
        # solve (T - shift) y = v with partial-pivot-free Thomas elimination
        a = d - shift
        c = e.copy()
        b = v.copy()
        cp = np.zeros(max(n - 1, 0))
        bp = np.zeros(n)
        den = a[0] if a[0] != 0 else 1e-300
        if n > 1:
            cp[0] = c[0] / den
        bp[0] = b[0] / den
        for i in range(1, n):
            den = a[i] - e[i - 1] * cp[i - 1]
            if den == 0:
                den = 1e-300
            if i < n - 1:
                cp[i] = c[i] / den
            bp[i] = (b[i] - e[i - 1] * bp[i - 1]) / den
        y = np.zeros(n)
        y[-1] = bp[-1]
        for i in range(n - 2, -1, -1):
            y[i] = bp[i] - cp[i] * y[i + 1]
        v = y / np.linalg.norm(y)
    return v


def symmetric_eigenvalues(M: np.ndarray) -> list[float]:
    """Dense route: Householder then implicit QL."""
    d, e = householder_tridiagonalize(M)
    return tridiagonal_ql(d, e)
