"""Galerkin truncation of the non-commutative harmonic oscillator

    Q = diag(α, β) (-∂²/2 + x²/2) + [[0, -1], [1, 0]] (x∂ + 1/2)

in the Hermite-function basis ``|n>``, ``n < N``, for each component.

With ``x = (a + a†)/√2`` and ``∂ = (a - a†)/√2`` one gets
``-∂²/2 + x²/2 = a†a + 1/2`` and ``x∂ + 1/2 = (a² - a†²)/2 =: A``, a real
antisymmetric matrix with ``A[n-2, n] = √(n(n-1))/2`` and
``A[n+2, n] = -√((n+1)(n+2))/2``.  Hence

    Q = [[α H, -A], [A, β H]],   H = diag(n + 1/2),

which is symmetric because ``(-A)^T = A``.  The coupling only joins
``(c, n)`` to ``(1-c, n±2)``, so Q splits into four tridiagonal chains
``(0,j)-(1,j+2)-(0,j+4)-...`` and ``(1,j)-(0,j+2)-...`` for ``j ∈ {0, 1}``.
The chain off-diagonals have magnitude ``√((n+1)(n+2))/2``; their signs
do not affect the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..zeta_values import SystemParameters


def _gammas(params: SystemParameters) -> tuple[float, float]:
    return float(params.a(64)), float(params.b(64))


@dataclass
class Chain:
    """One tridiagonal block: member states ``(component, mode)`` and its ``(d, e)``."""

    states: list[tuple[int, int]]
    d: np.ndarray
    e: np.ndarray


@dataclass
class TruncatedOperator:
    params: SystemParameters
    basis_size: int
    chains: list[Chain] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return 2 * self.basis_size

    def interleaved_index(self, component: int, mode: int) -> int:
        return 2 * mode + component

    def dense(self) -> np.ndarray:
        """The full ``2N x 2N`` matrix in interleaved ordering ``2n + c`` (bandwidth 5)."""
        al, be = _gammas(self.params)
        N = self.basis_size
        M = np.zeros((2 * N, 2 * N))
        for n in range(N):
            M[2 * n, 2 * n] = al * (n + 0.5)
            M[2 * n + 1, 2 * n + 1] = be * (n + 0.5)
        for n in range(N):
            for m, val in ((n - 2, math.sqrt(n * (n - 1)) / 2 if n >= 2 else 0.0),
                           (n + 2, -math.sqrt((n + 1) * (n + 2)) / 2)):
                if 0 <= m < N and val:
                    # block (0,1) is -A, block (1,0) is +A
                    M[2 * m + 1, 2 * n] = val
                    M[2 * m, 2 * n + 1] = -val
        return M

    def bandwidth(self) -> int:
        M = self.dense()
        rows, cols = np.nonzero(M)
        return int(np.max(np.abs(rows - cols))) if rows.size else 0


def _chain(al: float, be: float, start_comp: int, start_mode: int, N: int) -> Chain:
    states = []
    c, n = start_comp, start_mode
    while n < N:
        states.append((c, n))
        c, n = 1 - c, n + 2
    d = np.array([(al if c == 0 else be) * (n + 0.5) for c, n in states])
    e = np.array([math.sqrt((n + 1) * (n + 2)) / 2 for _, n in states[:-1]])
    return Chain(states, d, e)


def build_matrix(params: SystemParameters, N: int) -> TruncatedOperator:
    if N < 4:
        raise ValueError("basis size N must be >= 4")
    if not (params.product(64) - 1).is_positive():
        raise ValueError("alpha*beta must exceed 1")
    al, be = _gammas(params)
    chains = [_chain(al, be, c, j, N) for j in (0, 1) for c in (0, 1)]
    return TruncatedOperator(params, N, chains)
