from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from aperylike import zeta_values as zv
from aperylike.numeric import BigFloat

SQRT2 = BigFloat.exact(2, 256).sqrt()


def mp_frac(x) -> Fraction:
    return Fraction(mpmath.nstr(x, 50, min_fixed=-1, max_fixed=1))


@pytest.mark.parametrize("k", range(2, 12))
def test_riemann_zeta_against_euler_maclaurin(k):
    a = zv.riemann_zeta(k, 128)
    b = zv.zeta_euler_maclaurin(k, 128)
    assert a.overlaps(b)
    assert abs(float(a.mid - b.mid)) < 1e-35


@pytest.mark.parametrize("k", [2, 3, 4, 5, 7])
def test_riemann_zeta_against_mpmath(k):
    with mpmath.workdps(45):
        ref = mp_frac(mpmath.zeta(k))
    v = zv.riemann_zeta(k, 140)
    assert abs(v.mid - ref) < Fraction(1, 10 ** 40)
    assert v.error_bound < Fraction(1, 10 ** 40)


def test_riemann_zeta_leading_digits():
    assert str(float(zv.riemann_zeta(2))).startswith("1.644934066")
    assert str(float(zv.riemann_zeta(3))).startswith("1.202056903")


def test_hurwitz_half():
    assert zv.hurwitz_half(2).overlaps(zv.riemann_zeta(2, 140) * 3)


def test_bernoulli():
    assert [zv.bernoulli(n) for n in (0, 1, 2, 4, 6, 3)] == [1, Fraction(-1, 2), Fraction(1, 6),
                                                              Fraction(-1, 30), Fraction(1, 42), 0]


def test_riemann_zeta_domain():
    with pytest.raises(ValueError):
        zv.riemann_zeta(1)


# -- parameters -----------------------------------------------------------

def test_system_parameters_domain():
    with pytest.raises(zv.DomainError):
        zv.SystemParameters(1, 1)
    with pytest.raises(zv.DomainError):
        zv.SystemParameters(-2, -3)
    P = zv.SystemParameters(3, 2)
    assert P.x(64) == Fraction(1, 5)
    assert abs(float(P.gamma(64)) - 6 ** -0.5) < 1e-15
    assert abs(float(P.a_param(64)) - 5 ** -0.5) < 1e-15


def test_closed_domain_rejects_below_two():
    P = zv.SystemParameters(Fraction(3, 2), 1)
    with pytest.raises(zv.DomainError):
        zv.zeta_q2(P)
    with pytest.raises(zv.DomainError):
        zv.zeta_q3(P)


def test_series_domain_rejects_boundary():
    P = zv.SystemParameters(2, 1)
    zv.zeta_q2(P)  # closed form admitted at alpha*beta = 2
    with pytest.raises(zv.DomainError):
        zv.zeta_q_series(2, P, 50)


# -- closed forms ---------------------------------------------------------

def test_degenerate_sqrt2():
    P = zv.SystemParameters(SQRT2, SQRT2)
    assert abs(float(zv.zeta_q2(P) - zv.riemann_zeta(2) * 6)) < 1e-25
    assert abs(float(zv.zeta_q3(P) - zv.riemann_zeta(3) * 14)) < 1e-25
    assert abs(float(zv.zeta_q2(P)) - 9.8696044) < 1e-7
    assert abs(float(zv.zeta_q3(P)) - 16.828797) < 1e-6


def test_leading_constant_adjudication():
    res = zv.adjudicate_leading_constant()
    assert res["3/2"]["consistent"] and res["3/2"]["residual"] < 1e-25
    assert not res["3/4"]["consistent"] and res["3/4"]["residual"] > 4


def test_equal_couplings_two():
    P = zv.SystemParameters(2, 2)
    assert abs(float(zv.zeta_q2(P)) - 3.2898681) < 1e-7
    assert zv.zeta_q2(P).overlaps(zv.riemann_zeta(2, 160) * 2)
    ref = zv.riemann_zeta(3, 160) * 14 / BigFloat.exact(27, 160).sqrt()
    assert zv.zeta_q3(P).overlaps(ref)
    assert abs(float(zv.zeta_q3(P)) - 3.2387034242287) < 1e-12


@given(st.fractions(min_value=Fraction(3, 2), max_value=20, max_denominator=30))
@settings(max_examples=25, deadline=None)
def test_equal_couplings_spectral_formula(alpha):
    P = zv.SystemParameters(alpha, alpha)
    for k in (2, 3):
        assert abs(float(zv.zeta_q(k, P) - zv.zeta_q_equal(k, alpha))) < 1e-25


def test_three_two_values():
    P = zv.SystemParameters(3, 2)
    assert abs(float(zv.zeta_q2(P)) - 2.13293432652872) < 1e-13
    assert abs(float(zv.zeta_q3(P)) - 1.77855301924359) < 1e-13


@given(st.fractions(min_value=Fraction(11, 10), max_value=30, max_denominator=20),
       st.fractions(min_value=Fraction(11, 10), max_value=30, max_denominator=20))
@settings(max_examples=30, deadline=None)
def test_swap_symmetry(a, b):
    if a * b < 2:
        return
    P = zv.SystemParameters(a, b)
    for k in (2, 3):
        x, y = zv.zeta_q(k, P), zv.zeta_q(k, P.swapped())
        assert abs(float(x - y)) < 1e-30


# -- series route -----------------------------------------------------------

@pytest.mark.parametrize("alpha, beta", [(3, 2), (Fraction(5, 2), Fraction(5, 2)), (4, 3), (10, Fraction(41, 4))])
@pytest.mark.parametrize("k", [2, 3])
def test_closed_and_series_agree(alpha, beta, k):
    P = zv.SystemParameters(alpha, beta)
    c = zv.zeta_q(k, P, 128)
    s = zv.zeta_q_series(k, P, 400, 128)
    assert c.overlaps(s.value)
    assert abs(float(c.mid - s.value.mid)) < 1e-20


@pytest.mark.parametrize("k", [2, 3])
def test_series_n200_within_tail(k):
    P = zv.SystemParameters(3, 2)
    s = zv.zeta_q_series(k, P, 200)
    c = zv.zeta_q(k, P)
    assert abs(float(c.mid - s.value.mid)) <= s.tail_estimate + float(c.error_bound) + 1e-30
    assert s.terms == 200


def test_series_equal_couplings_is_prefactor():
    P = zv.SystemParameters(3, 3)
    sv = zv.zeta_q_series(2, P, 20)
    s = sv.value
    assert sv.tail_estimate == 0
    ref = zv.riemann_zeta(2, 160) * Fraction(36, 2 * 9 * 8) * 3
    assert abs(float(s - ref)) < 1e-30


def test_q3_below_q2_for_large_couplings():
    for a, b in [(3, 2), (4, 3), (5, 5), (10, Fraction(41, 4))]:
        P = zv.SystemParameters(a, b)
        assert float(zv.zeta_q3(P)) < float(zv.zeta_q2(P))
