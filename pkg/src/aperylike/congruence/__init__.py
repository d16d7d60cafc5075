"""Congruences of the normalized Apéry-like numbers modulo prime powers."""

from .primes import is_prime, odd_primes_up_to, primes_up_to, require_odd_prime
from .residues import DenominatorDivisibleError, DigitExpansion, Residue, congruent, legendre, rat_mod
from .theorems import (
    Verdict,
    digit_product_check,
    halfp_formula,
    j3_scaled_residue,
    jt2_halfp_value,
    jt2_residues,
    jt2_residues_exact,
    jt2_residues_padic,
    map_primes,
    mortenson_check,
    prop61_check,
    prop61_primes,
    prop61_scan,
    rv_conjecture_check,
    rv_scan,
    rv_sum_residue,
    supercong_counterexample_scan,
    thm62_j2_check,
    thm62_j3_check,
    thm62_scan,
    zeros_mod_p,
)
