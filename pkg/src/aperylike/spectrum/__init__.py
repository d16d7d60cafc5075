"""Galerkin spectrum of the non-commutative harmonic oscillator."""

from .eigensolver import (
    EigenConvergenceError,
    bisection_eigenvalues,
    householder_tridiagonalize,
    symmetric_eigenvalues,
    tridiagonal_inverse_iteration,
    tridiagonal_ql,
)
from .operator import Chain, TruncatedOperator, build_matrix
from .partial import PartialZeta, SpectrumResult, eigenvalues, partial_zeta, spot_check_residuals
