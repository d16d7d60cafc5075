import json
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from aperylike import sequences as sq
from aperylike.numeric import PowerSeries, double_factorial, pochhammer

JT2 = [Fraction(1), Fraction(3, 4), Fraction(41, 64), Fraction(147, 256), Fraction(8649, 16384),
       Fraction(32307, 65536), Fraction(487889, 1048576), Fraction(1856307, 4194304),
       Fraction(454689481, 1073741824), Fraction(1748274987, 4294967296)]
JT3 = [Fraction(0), Fraction(1, 2), Fraction(65, 96), Fraction(13247, 17280), Fraction(704707, 860160),
       Fraction(660278641, 774144000), Fraction(357852111131, 408748032000),
       Fraction(309349386395887, 347163328512000), Fraction(240498440880062263, 266621436297216000),
       Fraction(148443546307725010253, 163172319013896192000)]


@pytest.mark.parametrize("method", ["recurrence", "binomial_sum", "positive_form"])
def test_jt2_first_ten(method):
    assert list(sq.jt2_table(9, method).values) == JT2


@pytest.mark.parametrize("method", ["recurrence", "binomial_sum"])
def test_jt3_first_ten(method):
    assert list(sq.jt3_table(9, method).values) == JT3


def test_jt2_examples():
    assert list(sq.jt2_recurrence(2).values) == [1, Fraction(3, 4), Fraction(41, 64)]
    assert sq.jt2_binomial(0) == 1
    assert sq.jt2_binomial(7) == Fraction(1856307, 4194304)
    assert sq.jt2_positive_form(5) == Fraction(32307, 65536)


def test_jt3_hand_check():
    # -2(-1/2 + 31/192)
    assert sq.jt3_binomial(2) == -2 * (Fraction(-1, 2) + Fraction(31, 192))
    assert sq.jt3_binomial(0) == 0


def test_jt2_three_way_agreement():
    N = 1000
    rec = sq.jt2_table(N, "recurrence").values
    assert rec == sq.jt2_table(N, "binomial_sum").values
    assert rec == sq.jt2_table(N, "positive_form").values


def test_jt3_two_way_agreement():
    N = 500
    assert sq.jt3_table(N, "recurrence").values == sq.jt3_table(N, "binomial_sum").values


def test_jt2_recurrence_relation_holds():
    J = sq.jt2_recurrence(60).values
    for n in range(2, 61):
        assert 4 * n * n * J[n] - (8 * n * n - 8 * n + 3) * J[n - 1] + 4 * (n - 1) ** 2 * J[n - 2] == 0


def test_jt2_positive_and_decreasing():
    J = sq.jt2_recurrence(300).values
    assert all(v > 0 for v in J)
    assert all(a > b for a, b in zip(J, J[1:]))


def test_large_index_values():
    assert round(float(sq.jt2_at(10 ** 4)), 3) == 0.025
    assert round(sq.jt3_float(10 ** 4), 4) == 0.2457


def test_apery_values():
    assert [int(v) for v in sq.apery(5).values] == [1, 5, 73, 1445, 33001, 819005]


def test_apery_recurrence_matches_closed_sum():
    A = [int(v) for v in sq.apery(200).values]
    for n in range(1, 200):
        lhs = (n + 1) ** 3 * A[n + 1]
        assert lhs == (34 * n ** 3 + 51 * n ** 2 + 27 * n + 5) * A[n] - n ** 3 * A[n - 1]


def test_apery_literal_last_term_disagrees():
    # reading the last term as n^3 A_n gives (n+1)^3 A_{n+1} = (34n^3+51n^2+26n+5) A_n
    A2_literal = Fraction(34 + 51 + 26 + 5, 8) * 5
    assert A2_literal != sq.apery_sum(2)


def test_j_full():
    z = sq.j_full(2, 0)
    assert (z.q0, z.q1, z.weight) == (0, 3, 2)
    z = sq.j_full(3, 1)
    assert (z.q0, z.q1, z.weight) == (Fraction(1, 2), Fraction(21, 4), 3)
    z = sq.j_full(2, 1)
    assert (z.q0, z.q1) == (0, Fraction(9, 4))
    with pytest.raises(ValueError):
        sq.j_full(4, 0)


def test_zeta_combination_weights():
    a, b = sq.j_full(3, 2), sq.j_full(3, 1)
    assert (a - b).q1 == 7 * (JT2[2] - JT2[1])
    with pytest.raises(ValueError):
        sq.j_full(2, 1) + sq.j_full(3, 1)
    assert abs(float(sq.j_full(2, 0).evaluate(64)) - 3 * 1.6449340668482264) < 1e-15


def test_table_csv_and_json():
    t = sq.jt2_recurrence(9)
    lines = t.to_csv().strip().splitlines()
    assert lines[0] == "index,value"
    assert lines[3] == "2,41/64"
    back = sq.SequenceTable.from_json(t.to_json())
    assert back.values == t.values and back.kind == "J2_norm" and back.method == "recurrence"
    assert json.loads(t.to_json())["values"][9]["value"] == "1748274987/4294967296"


def test_table_rejects_unknown_tags():
    with pytest.raises(ValueError):
        sq.SequenceTable("J4_norm", "recurrence", (Fraction(1),))
    with pytest.raises(ValueError):
        sq.jt3_table(3, "positive_form")


@given(st.integers(0, 120))
@settings(max_examples=30, deadline=None)
def test_positive_form_summands_nonnegative(n):
    terms = [comb(2 * k, k) * comb(4 * k, 2 * k) * comb(2 * n - 2 * k, n - k) * comb(4 * n - 4 * k, 2 * n - 2 * k)
             for k in range(n + 1)]
    assert all(t >= 0 for t in terms)
    assert Fraction(sum(terms), 16 ** n * comb(2 * n, n)) == sq.jt2_binomial(n)


# -- differential operators ---------------------------------------------

def test_heun_annihilates_w2():
    out = sq.heun_apply(sq.wt_series(2, 30))
    assert all(c == 0 for c in out.coefficients[:30])


def test_heun_on_w3():
    out = sq.heun_apply(sq.wt_series(3, 30))
    for n in range(30):
        expected = Fraction(2 ** n * factorial(n), 2 * double_factorial(2 * n + 1))
        assert out[n] == expected
        # same numbers as (1/2) 2F1(1,1;3/2;z)
        assert expected == Fraction(1, 2) * pochhammer(1, n) ** 2 / (pochhammer(Fraction(3, 2), n) * factorial(n))


def test_heun_on_constant():
    out = sq.heun_apply(PowerSeries.constant(1, 5))
    assert out.coefficients[:2] == (Fraction(-3, 4), 1)
    assert all(c == 0 for c in out.coefficients[2:])


def test_dw_annihilates_g2():
    out = sq.dw_apply(sq.gt_series(2, 30))
    assert all(c == 0 for c in out.coefficients[:28])


def test_dw_on_g3():
    out = sq.dw_apply(sq.gt_series(3, 30))
    for n in range(28):
        assert out[n] == -2 * (-1) ** n


def test_dw_on_constant():
    out = sq.dw_apply(PowerSeries.constant(1, 6))
    assert out.coefficients[:2] == (3, 6)
    assert all(c == 0 for c in out.coefficients[2:])


def test_operator_order_guards():
    with pytest.raises(ValueError):
        sq.heun_apply(PowerSeries.constant(1, 1))
    with pytest.raises(ValueError):
        sq.dw_apply(PowerSeries.constant(1, 2))
