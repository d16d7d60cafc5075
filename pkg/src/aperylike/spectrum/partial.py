"""Eigenvalues of the truncated operator and partial spectral zeta sums."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolver import (
    bisection_eigenvalues,
    symmetric_eigenvalues,
    tridiagonal_inverse_iteration,
    tridiagonal_ql,
)
from .operator import TruncatedOperator


@dataclass
class SpectrumResult:
    eigenvalues: list[float]
    basis_size: int
    params: object
    max_residual: float | None = None

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigenvalues(op: TruncatedOperator, method: str = "chains", check_residuals: int = 10) -> SpectrumResult:
    """All eigenvalues, ascending.

    ``chains`` runs implicit QL on each tridiagonal block; ``dense`` runs
    Householder + QL on the full matrix (cubic cost, for cross-checks);
    ``bisection`` uses Sturm sequences on the blocks.
    """
    vals: list[float] = []
    per_chain = None
    if method == "dense":
        vals = symmetric_eigenvalues(op.dense())
    elif method in ("chains", "bisection"):
        per_chain = []
        for ch in op.chains:
            if method == "chains":
                per_chain.append(tridiagonal_ql(ch.d, ch.e))
            else:
                per_chain.append(sorted(bisection_eigenvalues(ch.d, ch.e).tolist()))
            vals.extend(per_chain[-1])
    else:
        raise ValueError(f"unknown method {method!r}")
    vals.sort()
    res = spot_check_residuals(op, check_residuals, chain_values=per_chain) if check_residuals else None
    return SpectrumResult(vals, op.basis_size, op.params, res)


def spot_check_residuals(op: TruncatedOperator, count: int, seed: int = 0, chain_values=None) -> float:
    """Max relative residual ``|Mv - λv| / |M|`` over ``count`` chain eigenpairs, measured on the full matrix."""
    rng = np.random.default_rng(seed)
    N = op.basis_size
    # |M|_2 <= max row sum; rows hold a diagonal and two couplings
    norm = max(float(np.max(np.abs(ch.d))) + 2 * float(np.max(ch.e, initial=0.0)) for ch in op.chains)
    worst = 0.0
    M = op.dense() if N <= 600 else None
    for _ in range(count):
        which = int(rng.integers(len(op.chains)))
        ch = op.chains[which]
        vals = chain_values[which] if chain_values else tridiagonal_ql(ch.d, ch.e)
        lam = vals[int(rng.integers(min(len(vals), max(1, len(vals) // 2))))]
        v = tridiagonal_inverse_iteration(ch.d, ch.e, lam)
        full = np.zeros(2 * N)
        sign = 1.0
        prev = None
        if M is None:
            r = _chain_residual(ch, v, lam)
        else:
            # restore the signs dropped in the chain form so v is an eigenvector of the full matrix
            for (c, n), x in zip(ch.states, v):
                if prev is not None:
                    sign *= float(np.sign(M[op.interleaved_index(c, n), op.interleaved_index(*prev)]))
                full[op.interleaved_index(c, n)] = sign * x
                prev = (c, n)
            r = float(np.linalg.norm(M @ full - lam * full))
        worst = max(worst, r / norm)
    return worst


def _chain_residual(ch, v, lam) -> float:
    Tv = ch.d * v
    Tv[:-1] += ch.e * v[1:]
    Tv[1:] += ch.e * v[:-1]
    return float(np.linalg.norm(Tv - lam * v))


@dataclass
class PartialZeta:
    s: int
    count: int
    partial: float
    tail_estimate: float
    lower: float
    upper: float
    slope: float
    intercept: float

    def contains(self, x) -> bool:
        x = float(x)
        return self.lower <= x <= self.upper

    def to_dict(self) -> dict:
        return dict(s=self.s, count=self.count, partial=self.partial, tail_estimate=self.tail_estimate,
                    lower=self.lower, upper=self.upper, slope=self.slope, intercept=self.intercept)


def partial_zeta(spec: SpectrumResult, s: int, count: int | None = None) -> PartialZeta:
    """``sum_{n<=M} λ_n^{-s}`` plus a tail interval ``[T/2, 2T]``.

    ``T = (Mc+d)^{1-s}/(c(s-1))`` integrates ``(ct+d)^{-s}`` past ``M`` for the
    least-squares line through ``λ_n``, ``M/2 <= n <= M``.  The tail is a
    heuristic estimate widened by a factor 2 each way.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    lam = spec.eigenvalues
    M = count if count is not None else spec.basis_size // 2
    if M > len(lam):
        raise ValueError("count exceeds the number of eigenvalues")
    if M < 8:
        raise ValueError("count must be >= 8")
    partial = math.fsum(x ** (-s) for x in lam[:M])
    idx = np.arange(M // 2, M + 1, dtype=float)
    ys = np.array(lam[M // 2 - 1 : M], dtype=float)
    c, d = np.polyfit(idx, ys, 1)
    T = (M * c + d) ** (1 - s) / (c * (s - 1))
    return PartialZeta(s, M, partial, float(T), partial + T / 2, partial + 2 * T, float(c), float(d))
