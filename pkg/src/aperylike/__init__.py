"""Rational sequences J̃₂(n), J̃₃(n) and the zeta values ζ_Q(2), ζ_Q(3) of a
coupled 2x2 oscillator.

Exact tables and congruences, hypergeometric closed forms, and two
numerical cross-checks (a Galerkin spectrum and direct quadrature).
"""

__version__ = "0.1.0"
