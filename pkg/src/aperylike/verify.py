"""End-to-end acceptance checks.

Each criterion is a function returning a :class:`CriterionResult` with the
measured quantities and the tolerance it was held to.  ``run_suite("quick")``
uses reduced sizes where a criterion is expensive; ``run_suite("full")`` uses
the sizes stated in the acceptance list.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial

from . import congruence as cg
from . import hypergeometric as hg
from . import quadrature as qd
from . import sequences as sq
from . import spectrum as sp
from . import zeta_values as zv
from .numeric import BigFloat, PowerSeries, binom_half, double_factorial, pochhammer

SCHEMA = "aperylike.verify/1"

TABLE1 = [Fraction(1), Fraction(3, 4), Fraction(41, 64), Fraction(147, 256), Fraction(8649, 16384),
          Fraction(32307, 65536), Fraction(487889, 1048576), Fraction(1856307, 4194304),
          Fraction(454689481, 1073741824), Fraction(1748274987, 4294967296)]
TABLE2 = [Fraction(0), Fraction(1, 2), Fraction(65, 96), Fraction(13247, 17280), Fraction(704707, 860160),
          Fraction(660278641, 774144000), Fraction(357852111131, 408748032000),
          Fraction(309349386395887, 347163328512000), Fraction(240498440880062263, 266621436297216000),
          Fraction(148443546307725010253, 163172319013896192000)]


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    tolerance: dict = field(default_factory=dict)
    seconds: float = 0.0
    reduced: bool = False

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        size = " (reduced sizes)" if self.reduced else ""
        return f"[{tag}] criterion {self.id}: {self.name}{size} ({self.seconds:.2f}s)"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        limit = res.tolerance.get("runtime_s")
        if limit is not None and res.seconds >= limit:
            res.passed = False
            res.measured["runtime_exceeded"] = True
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def c1_tables(quick: bool = False) -> CriterionResult:
    got = {}
    for m in ("recurrence", "binomial_sum", "positive_form"):
        got[f"jt2_{m}"] = list(sq.jt2_table(9, m).values) == TABLE1
    for m in ("recurrence", "binomial_sum"):
        got[f"jt3_{m}"] = list(sq.jt3_table(9, m).values) == TABLE2
    return CriterionResult(1, "first ten exact values of J̃₂ and J̃₃", all(got.values()), got, {"runtime_s": 1.0})


@_timed
def c2_cross_method(quick: bool = False) -> CriterionResult:
    n2, n3 = (200, 100) if quick else (1000, 500)
    a = sq.jt2_table(n2, "recurrence").values == sq.jt2_table(n2, "binomial_sum").values
    b = sq.jt3_table(n3, "recurrence").values == sq.jt3_table(n3, "binomial_sum").values
    return CriterionResult(2, "recurrence vs binomial sums agree exactly", a and b,
                           {"jt2_equal": a, "jt3_equal": b, "jt2_n": n2, "jt3_n": n3},
                           {"runtime_s": 30.0}, reduced=quick)


@_timed
def c3_odes(quick: bool = False) -> CriterionResult:
    N = 200
    w2 = sq.heun_apply(sq.wt_series(2, N + 2))
    w3 = sq.heun_apply(sq.wt_series(3, N + 2))
    g2 = sq.dw_apply(sq.gt_series(2, N + 3))
    g3 = sq.dw_apply(sq.gt_series(3, N + 3))
    rhs3 = [Fraction(2 ** n * factorial(n), 2 * double_factorial(2 * n + 1)) for n in range(N + 1)]
    ok = {
        "DH_w2_zero": all(c == 0 for c in w2.coefficients[: N + 1]),
        "DH_w3_rhs": list(w3.coefficients[: N + 1]) == rhs3,
        "DW_g2_zero": all(c == 0 for c in g2.coefficients[: N + 1]),
        "DW_g3_rhs": list(g3.coefficients[: N + 1]) == [Fraction(-2 * (-1) ** n) for n in range(N + 1)],
    }
    return CriterionResult(3, "Heun and third-order operators, exact through order 200", all(ok.values()), ok,
                           {"order": N})


def _random_params(rng: random.Random) -> hg.HyperParams:
    p = rng.randint(1, 3)
    q = p - 1 if rng.random() < 0.5 else p
    up = [Fraction(rng.randint(1, 9), rng.randint(1, 6)) for _ in range(p)]
    low = [Fraction(rng.randint(1, 9), rng.randint(1, 6)) for _ in range(q)]
    return hg.HyperParams.of(up, low)


@_timed
def c4_appendix(quick: bool = False) -> CriterionResult:
    N = 100
    P = hg.HyperParams.of([Fraction(1, 2)] * 3, [1, 1])
    rhs = [Fraction(-1, 4) * pochhammer(Fraction(1, 2), n) for n in range(N + 1)]
    phi = hg.inhom_solve(P, rhs, 0, N)
    img = hg.hgd_apply(P, phi)
    main = list(img.coefficients[:N]) == [rhs[n] / factorial(n) for n in range(N)]
    rng = random.Random(20240601)
    rand_ok = 0
    for _ in range(10):
        par = _random_params(rng)
        c = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(N + 1)]
        C = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f = hg.inhom_solve(par, c, C, N)
        im = hg.hgd_apply(par, f)
        rand_ok += list(im.coefficients[:N]) == [c[n] / factorial(n) for n in range(N)] and f.coefficients[0] == C
    pb = hg.moebius_pullback(PowerSeries(phi.coefficients[:51]))
    j3 = sq.jt3_recurrence(50).values
    pulled = all(pb.coefficients[n] == binom_half(n) * j3[n] for n in range(51))
    ok = main and rand_ok == 10 and pulled
    return CriterionResult(4, "inhomogeneous solver round trip and pull-back to g̃₃", ok,
                           {"section4_params": main, "random_sets_ok": rand_ok, "pullback_n_le_50": pulled},
                           {"order": N, "random_sets": 10})


@_timed
def c5_identities(quick: bool = False) -> CriterionResult:
    prec = 256
    out = {}
    for z in ("0.1", "0.3", "0.5"):
        l, r = hg.clausen_sides(Fraction(1, 4), Fraction(1, 4), Fraction(z), prec)
        out[f"clausen_{z}"] = l.overlaps(r)
    for (a, b, c) in ((Fraction(1, 4), Fraction(1, 4), 1), (1, 1, Fraction(3, 2))):
        for z in ("-0.5", "-0.25", "0.4"):
            l, r = hg.pfaff_sides(a, b, c, Fraction(z), prec)
            out[f"pfaff_{a},{b},{c}_{z}"] = l.overlaps(r)
    return CriterionResult(5, "Clausen and Pfaff identities at 256 bits", all(out.values()), out,
                           {"precision_bits": prec})


@_timed
def c6_degeneration(quick: bool = False) -> CriterionResult:
    prec = 128
    r2 = BigFloat.exact(2, prec + 64).sqrt()
    P = zv.SystemParameters(r2, r2)
    q2 = zv.zeta_q2(P, prec)
    q3 = zv.zeta_q3(P, prec)
    e2 = abs(float(q2 - zv.riemann_zeta(2, prec) * 6))
    e3 = abs(float(q3 - zv.riemann_zeta(3, prec) * 14))
    alt = abs(float(zv.zeta_q2(P, prec, constant=zv.ALTERNATIVE_CONSTANT_Q2) - zv.riemann_zeta(2, prec) * 6))
    ok = e2 < 1e-25 and e3 < 1e-25 and alt > 1
    return CriterionResult(6, "alpha=beta=sqrt2 gives 6ζ(2) and 14ζ(3); leading constant 3/2", ok,
                           {"err_q2": e2, "err_q3": e3, "err_q2_with_3/4": alt, "zeta_q2": float(q2),
                            "zeta_q3": float(q3)}, {"abs": 1e-25})


@_timed
def c7_paths(quick: bool = False) -> CriterionResult:
    N = 400
    out = {}
    ok = True
    for a, b in ((3, 2), (4, 3), (Fraction(5, 2), Fraction(5, 2))):
        P = zv.SystemParameters(a, b)
        for k in (2, 3):
            c = zv.zeta_q(k, P, 128)
            s = zv.zeta_q_series(k, P, N, 128)
            diff = abs(float(c.mid - s.value.mid))
            bound = float(c.error_bound + s.value.error_bound)
            good = diff <= bound and diff < 1e-20
            ok &= good
            out[f"({a},{b})_k{k}"] = {"diff": diff, "combined_bound": bound, "ok": good}
    return CriterionResult(7, "closed form vs series for ζ_Q(2), ζ_Q(3)", ok, out, {"abs": 1e-20, "terms": N})


@_timed
def c8_spectrum(quick: bool = False) -> CriterionResult:
    N, M = (400, 160) if quick else (2000, 800)
    out = {}
    ok = True
    r2 = BigFloat.exact(2, 128).sqrt()
    for name, (a, b) in (("sqrt2", (r2, r2)), ("3,2", (3, 2)), ("2,2", (2, 2))):
        P = zv.SystemParameters(a, b)
        res = sp.eigenvalues(sp.build_matrix(P, N))
        for s in (2, 3):
            pz = sp.partial_zeta(res, s, M)
            ref = float(zv.zeta_q(s, P, 128))
            inside = pz.contains(ref)
            ok &= inside
            out[f"{name}_s{s}"] = {"lower": pz.lower, "upper": pz.upper, "closed_form": ref, "contained": inside}
        out[f"{name}_max_residual"] = res.max_residual
        ok &= res.max_residual < 1e-10
        if name == "sqrt2":
            low = res.eigenvalues[:40]
            dev = max(abs(x - (i // 2 + 0.5)) for i, x in enumerate(low))
            out["sqrt2_lowest40_maxdev"] = dev
            ok &= dev < 1e-6
    return CriterionResult(8, "spectral partial sums contain ζ_Q(2), ζ_Q(3)", ok, out,
                           {"basis_size": N, "count": M, "eig_abs": 1e-6, "residual_rel": 1e-10}, reduced=quick)


@_timed
def c9_quadrature(quick: bool = False) -> CriterionResult:
    out = {}
    j20 = qd.jk_integral(qd.IntegralSpec(2, 0, None, 1e-10))
    j30 = qd.jk_integral(qd.IntegralSpec(3, 0, None, 1e-10))
    e20 = abs(j20.value - float(qd.jk0_closed(2)))
    e30 = abs(j30.value - float(qd.jk0_closed(3)))
    out["J2(0)_err"], out["J3(0)_err"] = e20, e30
    ok = e20 < 1e-8 and e30 < 1e-6
    worst2 = worst3 = 0.0
    for n in range(11):
        r = qd.jk_integral(qd.IntegralSpec(2, n, None, 1e-10))
        d = abs(r.value - float(qd.jk_exact(2, n)))
        worst2 = max(worst2, d)
        ok &= d <= max(1e-8, r.error_estimate)
    for n in range(9):
        r = qd.jk_integral(qd.IntegralSpec(3, n, None, 1e-10))
        d = abs(r.value - float(qd.jk_exact(3, n)))
        worst3 = max(worst3, d)
        ok &= d <= max(1e-6, r.error_estimate)
    out["J2_n<=10_maxerr"], out["J3_n<=8_maxerr"] = worst2, worst3
    vc = qd.vertical_relation_check(4, "closed")
    vq = qd.vertical_relation_check(4, "quadrature")
    out["vertical_closed"], out["vertical_quadrature"] = vc.residual, vq.residual
    ok &= vc.holds and vq.holds
    return CriterionResult(9, "quadrature of J_k(n) and the vertical relation", ok, out,
                           {"J2(0)": 1e-8, "J3(0)": 1e-6, "vertical_closed": 1e-25, "vertical_quadrature": 1e-6})


@_timed
def c10_congruences(quick: bool = False) -> CriterionResult:
    out = {}
    primes61 = [3, 7, 11, 19, 23] if quick else [3, 7, 11, 19, 23, 31, 43]
    p61 = {p: cg.prop61_scan(p).holds for p in primes61}
    out["prop61"] = p61
    half = {p: cg.jt2_halfp_value(p) == cg.halfp_formula(p) for p in cg.odd_primes_up_to(99)}
    out["halfp_all_ok"] = all(half.values())
    t62 = cg.thm62_scan(13, 2 if quick else 3, 5)
    out["thm62_checked"] = len(t62)
    out["thm62_failures"] = [v.to_json() for v in t62 if not v.holds]
    sc = cg.supercong_counterexample_scan(13, 4, 2)
    out["supercong_triples"] = len(sc)
    out["supercong_first"] = sc[:5]
    rv = cg.rv_scan(99)
    out["rv_all_hold"] = all(v.holds for v in rv)
    ok = all(p61.values()) and out["halfp_all_ok"] and not out["thm62_failures"] and sc and out["rv_all_hold"]
    return CriterionResult(10, "congruence suite", bool(ok), out, {"runtime_s": 600.0}, reduced=quick)


@_timed
def c11_regression(quick: bool = False) -> CriterionResult:
    a = float(sq.jt2_at(10 ** 4))
    b = sq.jt3_float(10 ** 4)
    ok = f"{a:.1e}" == "2.5e-02" and f"{b:.1e}" == "2.5e-01" and round(b, 4) == 0.2457
    return CriterionResult(11, "J̃₂(10^4) ≈ 0.025 and J̃₃(10^4) ≈ 0.2457", ok, {"jt2": a, "jt3": b},
                           {"significant_figures": 2})


CRITERIA = [c1_tables, c2_cross_method, c3_odes, c4_appendix, c5_identities, c6_degeneration,
            c7_paths, c8_spectrum, c9_quadrature, c10_congruences, c11_regression]


def run_suite(suite: str = "quick", only=None, echo=None) -> dict:
    if suite not in ("quick", "full"):
        raise ValueError("suite must be 'quick' or 'full'")
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        try:
            r = fn(quick=(suite == "quick"))
        except Exception as exc:  # a crashing criterion is a failing criterion
            r = CriterionResult(i, fn.__name__, False, {"error": f"{type(exc).__name__}: {exc}"})
        results.append(r)
        if echo:
            echo(r.line())
    return {"schema": SCHEMA, "suite": suite, "passed": all(r.passed for r in results),
            "criteria": [asdict(r) for r in results]}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, default=str)
