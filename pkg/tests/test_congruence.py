import json
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from aperylike import congruence as cg
from aperylike import sequences as sq
from aperylike.numeric import binom_half

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


@pytest.mark.parametrize("x, p, r, expected", [
    (Fraction(3, 4), 3, 1, 0),
    (Fraction(41, 64), 5, 1, 4),
    (Fraction(1, 2), 5, 1, 3),
])
def test_rat_mod_examples(x, p, r, expected):
    assert cg.rat_mod(x, p, r).value == expected


def test_rat_mod_refuses_p_in_denominator():
    with pytest.raises(cg.DenominatorDivisibleError):
        cg.rat_mod(Fraction(1, 9), 3, 2)


@given(st.fractions(max_denominator=10 ** 6), st.sampled_from([3, 5, 7, 11]), st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_rat_mod_definition(x, p, r):
    if x.denominator % p == 0:
        return
    res = cg.rat_mod(x, p, r)
    assert 0 <= res.value < p ** r
    assert (x - res.value).numerator % p ** r == 0


@pytest.mark.parametrize("a, p, expected", [(-1, 5, 1), (-1, 7, -1), (-4, 13, 1), (10, 5, 0)])
def test_legendre_examples(a, p, expected):
    assert cg.legendre(a, p) == expected


def test_primes():
    assert cg.primes_up_to(50) == [2] + SMALL_PRIMES
    assert all(cg.is_prime(p) == (p in cg.primes_up_to(2000)) for p in range(2000))
    assert cg.is_prime(2 ** 61 - 1) and not cg.is_prime(3215031751)
    with pytest.raises(ValueError):
        cg.require_odd_prime(9)


def test_digit_expansion():
    d = cg.DigitExpansion.of(100, 7)
    assert d.digits == (2, 0, 2) and d.value() == 100
    assert cg.DigitExpansion.of(0, 5).digits == (0,)
    with pytest.raises(ValueError):
        cg.DigitExpansion((0, 1), 3)


# -- residues of J̃₂ ----------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_padic_and_exact_residues_agree(p):
    for r in (1, 2, 3):
        assert cg.jt2_residues_padic(p, 400, r) == cg.jt2_residues_exact(p, 400, r)


def test_residues_match_rat_mod():
    J = sq.jt2_recurrence(60).values
    for p in (3, 7, 23):
        res = cg.jt2_residues(p, 60, 2)
        assert res == [cg.rat_mod(v, p, 2).value for v in J]


# -- digit criterion ----------------------------------------------------

def test_digit_criterion_examples():
    assert cg.prop61_check(3, 1) and cg.rat_mod(sq.jt2_at(1), 3).value == 0
    assert cg.prop61_check(7, 3) and cg.rat_mod(sq.jt2_at(3), 7).value == 0
    assert not cg.prop61_check(23, 7)
    assert cg.rat_mod(sq.jt2_at(7), 23).value == 0
    assert cg.rat_mod(sq.jt2_at(15), 23).value == 0


def test_digit_criterion_needs_three_mod_four():
    with pytest.raises(ValueError):
        cg.prop61_check(5, 2)


@pytest.mark.parametrize("p", cg.prop61_primes(43))
def test_digit_criterion_exhaustive(p):
    v = cg.prop61_scan(p)
    assert v.params["n_max"] == p ** 3 - 1
    assert v.holds, v.residues["failures"][:10]


def test_zeros_mod_23():
    assert cg.zeros_mod_p(23, 30) == [7, 11, 15, 30]


def test_digit_products():
    for p in (3, 5, 7, 11):
        for n in random.Random(p).sample(range(p ** 3), 20):
            assert cg.digit_product_check(p, n)


@pytest.mark.parametrize("p, expected", [(7, 0), (5, 4), (3, 0), (11, 0)])
def test_halfp_examples(p, expected):
    assert cg.jt2_halfp_value(p).value == expected


@pytest.mark.parametrize("p", [q for q in SMALL_PRIMES])
def test_halfp_formula_matches_table(p):
    assert cg.jt2_halfp_value(p) == cg.halfp_formula(p)


def test_halfp_13():
    expected = -pow(6, -4, 13) % 13
    assert cg.jt2_halfp_value(13).value == expected == cg.rat_mod(sq.jt2_at(6), 13).value


# -- higher congruences -------------------------------------------------

@pytest.mark.parametrize("p, m, r", [(3, 1, 1), (5, 1, 2), (7, 2, 1)])
def test_lifted_j2_examples(p, m, r):
    assert cg.thm62_j2_check(p, m, r)
    assert cg.thm62_j2_check(p, m, r, method="padic")


def test_lifted_j2_exact_values():
    assert cg.congruent(sq.jt2_at(25), sq.jt2_at(5), 5, 2)
    assert cg.congruent(sq.jt2_at(14), sq.jt2_at(2), 7, 1)


def test_lifted_j3_at_five():
    v = sq.jt3_at(5)
    assert v == Fraction(660278641, 774144000)
    assert cg.j3_scaled_residue(5, 1, v).value == 3
    assert cg.thm62_j3_check(5, 1)


@pytest.mark.parametrize("p, r", [(3, 1), (3, 2), (5, 2), (7, 1)])
def test_lifted_j3_examples(p, r):
    assert cg.thm62_j3_check(p, r)


def test_j3_needs_scaling():
    with pytest.raises(cg.DenominatorDivisibleError):
        cg.rat_mod(sq.jt3_at(5), 5, 1)


def test_lifted_scan_exhaustive():
    verdicts = cg.thm62_scan(13, 3, 5)
    assert len(verdicts) == 5 * (3 * 5 + 3)
    assert all(v.holds for v in verdicts)
    d = json.loads(verdicts[0].to_json())
    assert set(d) == {"check", "p", "holds", "params", "residues", "conjectural"}


def test_supercongruence_counterexamples():
    trips = cg.supercong_counterexample_scan(13, 4, 2)
    assert trips
    assert (3, 2, 1) in trips and (5, 1, 1) in trips
    for p, m, r in trips:
        assert cg.congruent(sq.jt2_at(m * p ** r), sq.jt2_at(m * p ** (r - 1)), p, r)
        assert not cg.congruent(sq.jt2_at(m * p ** r), sq.jt2_at(m * p ** (r - 1)), p, r + 1)
    assert cg.supercong_counterexample_scan(13, 0, 2) == []
    assert cg.supercong_counterexample_scan(2, 4, 2) == []


def test_scan_with_workers_matches_serial():
    assert cg.supercong_counterexample_scan(11, 2, 1, threads=2) == cg.supercong_counterexample_scan(11, 2, 1)


# -- conjectural sums ---------------------------------------------------

def test_square_sum_three():
    s = 1 + Fraction(3, 4) ** 2 + Fraction(41, 64) ** 2
    assert cg.rv_sum_residue(3) == cg.rat_mod(s, 3, 3)
    assert cg.rv_conjecture_check(3)


@pytest.mark.parametrize("p, target", [(5, 1), (7, 343 - 1)])
def test_square_sum_examples(p, target):
    assert cg.rv_sum_residue(p).value == target
    assert cg.rv_conjecture_check(p)


def test_square_sum_scan_marked_conjectural():
    verdicts = cg.rv_scan(60)
    assert [v.p for v in verdicts] == [p for p in cg.odd_primes_up_to(60)]
    assert all(v.holds and v.conjectural for v in verdicts)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_central_binomial_square_sum(p):
    assert cg.mortenson_check(p)


# -- elementary binomial congruences -------------------------------------

@given(st.sampled_from(SMALL_PRIMES[:12]), st.data())
@settings(max_examples=100, deadline=None)
def test_lucas_kernel(p, data):
    a, b, c, d = (data.draw(st.integers(0, p - 1)) for _ in range(4))
    assert (comb(a * p + b, c * p + d) - comb(a, c) * comb(b, d)) % p == 0


@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(1, 3), st.integers(1, 6), st.integers(1, 6))
@settings(max_examples=100, deadline=None)
def test_binomial_lifting(p, r, l, m, k):
    if k % p == 0:
        return
    assert (comb(m * p ** r, k * p ** l) - comb(m * p ** (r - 1), k * p ** (l - 1))) % p ** r == 0


@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_half_binomial_lifting(p, l, k):
    if k % p == 0:
        return
    assert cg.congruent(binom_half(k * p ** l), binom_half(k * p ** (l - 1)), p, l)


@given(st.sampled_from([3, 5, 7]), st.integers(1, 3), st.integers(1, 4), st.data())
@settings(max_examples=100, deadline=None)
def test_shifted_binomial(p, r, m, data):
    k = data.draw(st.integers(0, m * p ** r - 1))
    lhs = comb(m * p ** r - 1, k)
    rhs = (-1) ** (k - k // p) * comb(m * p ** (r - 1) - 1, k // p)
    assert (lhs - rhs) % p ** r == 0


def test_shifted_binomial_needs_the_minus_one():
    # the form with C(mp^{r-1}, [k/p]) on the right fails already at p=3, m=2, k=3
    assert (comb(5, 3) - comb(2, 1)) % 3 != 0
    assert (comb(5, 3) - comb(1, 1)) % 3 == 0


def test_shifted_binomial_central_case():
    # m = 2j+1, r = 1, k = (p(2j+1)-1)/2 gives C(2j, j) on the right
    for p in (3, 5, 7, 11):
        for j in range(12):
            k = (p * (2 * j + 1) - 1) // 2
            assert k // p == j
            assert (comb(p * (2 * j + 1) - 1, k) - (-1) ** (k - j) * comb(2 * j, j)) % p == 0
