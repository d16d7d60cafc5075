import math

import pytest

from aperylike import quadrature as qd
from aperylike.zeta_values import riemann_zeta

Z2 = float(riemann_zeta(2))
Z3 = float(riemann_zeta(3))
Z4 = float(riemann_zeta(4))


def test_spec_defaults_and_guards():
    assert qd.IntegralSpec(2).form == "unit_cube"
    assert qd.IntegralSpec(3).form == "two_dim_reduced"
    for bad in (dict(k=1), dict(k=3, n=-1), dict(k=3, form="sphere"), dict(k=5, form="unit_cube")):
        with pytest.raises(ValueError):
            qd.IntegralSpec(**bad)


@pytest.mark.parametrize("k, n, expected, tol", [
    (2, 0, 3 * Z2, 1e-8),
    (3, 0, 7 * Z3, 1e-6),
    (2, 2, 3 * Z2 * 41 / 64, 1e-8),
])
def test_jk_examples(k, n, expected, tol):
    r = qd.jk_integral(qd.IntegralSpec(k, n))
    assert abs(r.value - expected) < tol
    assert r.error_estimate < tol


def test_jk_example_digits():
    assert round(qd.jk_integral(qd.IntegralSpec(2, 0)).value, 6) == 4.934802
    assert round(qd.jk_integral(qd.IntegralSpec(3, 0)).value, 6) == 8.414398
    assert math.floor(qd.jk_integral(qd.IntegralSpec(2, 2)).value * 1e6) == 3161357


def test_j2_matches_exact():
    for n in range(11):
        r = qd.jk_integral(qd.IntegralSpec(2, n))
        assert abs(r.value - float(qd.jk_exact(2, n))) <= max(1e-8, r.error_estimate)


def test_j3_matches_exact():
    for n in range(9):
        r = qd.jk_integral(qd.IntegralSpec(3, n))
        assert abs(r.value - float(qd.jk_exact(3, n))) <= max(1e-6, r.error_estimate)


def test_cube_and_reduced_agree_k3():
    for n in range(6):
        a = qd.jk_integral(qd.IntegralSpec(3, n, "unit_cube", 1e-8))
        b = qd.jk_integral(qd.IntegralSpec(3, n, "two_dim_reduced", 1e-8))
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-9


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_positive_and_decreasing(k):
    vals = [qd.jk_integral(qd.IntegralSpec(k, n, None, 1e-8)).value for n in range(8)]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_jk1_closed_examples():
    assert abs(float(qd.jk1_closed(2)) - 9 / 4 * Z2) < 1e-15
    assert abs(float(qd.jk1_closed(3)) - (21 / 4 * Z3 + 0.5)) < 1e-15
    assert abs(float(qd.jk1_closed(2) - qd.jk_exact(2, 1))) < 1e-30
    assert abs(float(qd.jk1_closed(3) - qd.jk_exact(3, 1))) < 1e-30


def test_jk1_closed_k4_by_quadrature():
    # (3/4)(15 ζ(4) + (1/4) 3 ζ(2))
    closed = float(qd.jk1_closed(4))
    assert abs(closed - 0.75 * (15 * Z4 + 0.75 * Z2)) < 1e-14
    assert abs(qd.jk_integral(qd.IntegralSpec(4, 1, None, 1e-10)).value - closed) < 1e-9
    assert abs(qd.jk_integral(qd.IntegralSpec(4, 1, "unit_cube", 1e-6)).value - closed) < 1e-6


@pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
def test_vertical_relation_closed(k):
    v = qd.vertical_relation_check(k, "closed")
    assert v.holds and v.residual < 1e-25


def test_vertical_relation_quadrature():
    v = qd.vertical_relation_check(4, "quadrature")
    assert v.holds and v.residual < 1e-6


def test_vertical_relation_guards():
    with pytest.raises(ValueError):
        qd.vertical_relation_check(3)
    with pytest.raises(ValueError):
        qd.vertical_relation_check(4, "guess")


@pytest.mark.parametrize("k", [2, 3, 4])
def test_wk_at_zero(k):
    expected = float(qd.jk0_closed(k))
    assert abs(expected - (2 ** k - 1) * float(riemann_zeta(k))) < 1e-14
    assert abs(qd.wk_integral(k, 0.0).value - expected) < 1e-8


def test_w2_partial_vs_integral():
    z = 0.3
    partial = qd.wk_partial(2, z, 60)
    integral = qd.wk_integral(2, z, 1e-10).value
    assert abs(partial - integral) < 1e-6


def test_w3_partial_vs_integral():
    z = -0.4
    assert abs(qd.wk_partial(3, z, 60) - qd.wk_integral(3, z, 1e-10).value) < 1e-6


def test_w4_partial_vs_integral():
    z = 0.2
    assert abs(qd.wk_partial(4, z, 14, 1e-10) - qd.wk_integral(4, z, 1e-9).value) < 1e-4


def test_wk_domain():
    with pytest.raises(ValueError):
        qd.wk_integral(2, 1.0)
    with pytest.raises(ValueError):
        qd.wk_partial(2, -1.0, 5)


def test_unreachable_tolerance():
    with pytest.raises(qd.ToleranceNotReached) as info:
        qd.jk_integral(qd.IntegralSpec(2, 0, None, 0.0))
    assert math.isfinite(info.value.best)
    assert abs(info.value.best - 3 * Z2) < 1e-12


def test_result_serialization():
    d = qd.jk_integral(qd.IntegralSpec(2, 1)).to_dict()
    assert set(d) == {"value", "error_estimate", "form", "nodes", "step"}
    assert d["form"] == "unit_cube"
