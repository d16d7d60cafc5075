"""Command-line entry point: ``aperylike <command> ...``.

Exit status is 0 on success, 1 when a computation fails (including a failing
verification), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction

from .numeric import BigFloat, format_rational, parse_rational

DEFAULT_PREC = 128


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------

_SQRT = re.compile(r"^\s*sqrt\((.+)\)\s*$")


def parse_number(text: str, prec: int):
    """``"7/5"`` and decimals stay exact rationals; ``"sqrt(q)"`` becomes a BigFloat."""
    m = _SQRT.match(text)
    if m:
        q = parse_rational(m.group(1))
        if q < 0:
            raise UsageError(f"sqrt of a negative number: {text}")
        return BigFloat.exact(q, prec + 64).sqrt()
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError, ArithmeticError):
        raise UsageError(f"not a rational, decimal or sqrt(q): {text!r}") from None


def parse_list(text: str) -> list[Fraction]:
    if text.strip() == "":
        return []
    return [parse_rational(t) for t in text.split(",")]


def _default_prec() -> int:
    env = os.environ.get("APERYLIKE_PREC")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"APERYLIKE_PREC must be an integer, got {env!r}") from None
    return DEFAULT_PREC


def _bigfloat_json(x: BigFloat, digits: int | None = None) -> dict:
    val, err = x.to_strings(digits)
    return {"value": val, "error_bound": err}


def _emit(args, payload, rows=None, header=None, text=None):
    """Write one result in the selected format."""
    fmt = args.format
    out = sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=None, default=str) + "\n")
    elif fmt == "csv":
        if rows is None:
            rows = [[k, v] for k, v in payload.items()] if isinstance(payload, dict) else [[payload]]
            header = header or ["key", "value"]
        w = csv.writer(out, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(rows)
    else:
        out.write((text if text is not None else _text(payload)) + "\n")


def _text(payload) -> str:
    if isinstance(payload, dict):
        return "\n".join(f"{k}: {v}" for k, v in payload.items())
    return str(payload)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_seq(args):
    from . import sequences as sq

    n = args.n_max
    if n < 0:
        raise UsageError("--n-max must be >= 0")
    if args.which == "jt2":
        table = sq.jt2_table(n, args.method or "recurrence")
    elif args.which == "jt3":
        table = sq.jt3_table(n, args.method or "recurrence")
    else:
        table = sq.apery(n)
    if args.format == "json":
        sys.stdout.write(table.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        for i, v in enumerate(table.values):
            sys.stdout.write(f"{i}\t{format_rational(v)}\n")


def _jsonl(verdicts):
    for v in verdicts:
        sys.stdout.write(v.to_json() + "\n")


def cmd_congr(args):
    from . import congruence as cg

    if args.which == "prop61":
        cg.require_odd_prime(args.p)
        v = cg.prop61_scan(args.p, args.n_max)
        _jsonl([v])
        return 0 if v.holds else 1
    if args.which == "zeros":
        zs = cg.zeros_mod_p(args.p, args.n_max)
        _emit(args, {"p": args.p, "n_max": args.n_max, "zeros": zs})
        return 0
    if args.which == "thm62":
        vs = cg.thm62_scan(args.p_max, args.r_max, args.m_max, args.threads)
        _jsonl(vs)
        return 0 if all(v.holds for v in vs) else 1
    if args.which == "rv":
        vs = cg.rv_scan(args.p_max, args.threads)
        _jsonl(vs)
        return 0
    if args.which == "superscan":
        triples = cg.supercong_counterexample_scan(args.p_max, args.m_max, args.r_max, args.threads)
        _jsonl([cg.Verdict("supercong", p, False, {"m": m, "r": r}) for p, m, r in triples])
        return 0
    if args.which == "halfp":
        for p in cg.odd_primes_up_to(args.p_max):
            a, b = cg.jt2_halfp_value(p), cg.halfp_formula(p)
            _jsonl([cg.Verdict("halfp", p, a == b, {}, {"table": a.value, "formula": b.value})])
        return 0
    raise UsageError(f"unknown congr command {args.which}")


def cmd_hyper(args):
    from . import hypergeometric as hg

    params = hg.HyperParams.of(parse_list(args.upper), parse_list(args.lower))
    if args.which == "eval":
        z = parse_number(args.z, args.prec)
        v = hg.pfq_eval(hg.EvalRequest(params, z, args.prec, args.max_terms))
        _emit(args, {"upper": args.upper, "lower": args.lower, "z": args.z, **_bigfloat_json(v)})
        return 0
    if args.which == "inhom":
        with open(args.rhs_file) as fh:
            data = json.load(fh)
        rhs = [parse_rational(str(x)) for x in (data["rhs"] if isinstance(data, dict) else data)]
        C = parse_rational(args.C)
        f = hg.inhom_solve(params, rhs, C, args.order)
        coeffs = [format_rational(c) for c in f.coefficients]
        _emit(args, {"order": args.order, "coefficients": coeffs},
              rows=[[i, c] for i, c in enumerate(coeffs)], header=["index", "coefficient"],
              text="\n".join(f"{i}\t{c}" for i, c in enumerate(coeffs)))
        return 0
    raise UsageError(f"unknown hyper command {args.which}")


def cmd_zeta(args):
    from . import zeta_values as zv

    if args.which == "riemann":
        v = zv.riemann_zeta(args.k, args.prec)
        _emit(args, {"k": args.k, **_bigfloat_json(v)})
        return 0
    P = zv.SystemParameters(parse_number(args.alpha, args.prec), parse_number(args.beta, args.prec))
    out = {"k": args.k, "alpha": args.alpha, "beta": args.beta}
    if args.method in ("closed", "both"):
        c = zv.zeta_q(args.k, P, args.prec)
        out["closed"] = _bigfloat_json(c)
        if args.k == 2:
            out["note"] = "leading constant 3/2; the alternative 3/4 fails the alpha=beta=sqrt(2) identity"
    if args.method in ("series", "both"):
        s = zv.zeta_q_series(args.k, P, args.terms, args.prec)
        out["series"] = {**_bigfloat_json(s.value), "tail_estimate": s.tail_estimate, "terms": s.terms}
    if args.method == "both":
        out["agree"] = c.overlaps(s.value)
    text = None
    if args.format == "text":
        lines = [f"{key}: {out[key]['value']} +/- {out[key]['error_bound']}"
                 for key in ("closed", "series") if key in out]
        if args.method == "both":
            lines.append(f"agree: {out['agree']}")
        text = lines[0].split(": ", 1)[1] if len(lines) == 1 else "\n".join(lines)
    _emit(args, out, text=text)
    return 0


def cmd_spectrum(args):
    from . import spectrum as sp
    from . import zeta_values as zv

    P = zv.SystemParameters(parse_number(args.alpha, args.prec), parse_number(args.beta, args.prec))
    op = sp.build_matrix(P, args.basis_size)
    res = sp.eigenvalues(op, args.method)
    count = args.count if args.count else args.basis_size // 2
    pz = sp.partial_zeta(res, args.s, count)
    payload = {"alpha": args.alpha, "beta": args.beta, "basis_size": args.basis_size,
               "eigenvalues": res.eigenvalues[: args.show], "max_residual": res.max_residual, **pz.to_dict()}
    _emit(args, payload)
    return 0


def cmd_integrate(args):
    from . import quadrature as qd

    form = {"cube": "unit_cube", "reduced": "two_dim_reduced", None: None}[args.form]
    if args.which == "jk":
        r = qd.jk_integral(qd.IntegralSpec(args.k, args.n, form, args.tol))
        _emit(args, {"k": args.k, "n": args.n, **r.to_dict()})
        return 0
    if args.which == "vertical":
        v = qd.vertical_relation_check(args.k, args.method)
        _emit(args, {"k": v.k, "method": v.method, "residual": v.residual, "tolerance": v.tolerance,
                     "holds": v.holds})
        return 0 if v.holds else 1
    if args.which == "wk":
        r = qd.wk_integral(args.k, float(parse_rational(args.z)), args.tol, form)
        _emit(args, {"k": args.k, "z": args.z, **r.to_dict()})
        return 0
    raise UsageError(f"unknown integrate command {args.which}")


def cmd_verify(args):
    from .verify import report_json, run_suite

    echo = None if args.format == "json" else (lambda line: sys.stdout.write(line + "\n"))
    only = [int(x) for x in args.only.split(",")] if args.only else None
    report = run_suite(args.suite, only, echo)
    if args.format == "json":
        sys.stdout.write(report_json(report) + "\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report_json(report) + "\n")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so a flag given before the subcommand is not reset after it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    p.add_argument("--prec", type=int, default=argparse.SUPPRESS, help="working precision in bits (>= 53)")
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="aperylike", parents=[common],
                 description="Exact sequences, ζ_Q values, congruence scans and numerical cross-checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("seq", parents=[common], help="exact sequence tables")
    s.add_argument("which", choices=("jt2", "jt3", "apery"))
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--method", choices=("recurrence", "binomial_sum", "positive_form"))
    s.set_defaults(func=cmd_seq)

    c = sub.add_parser("congr", parents=[common], help="congruence checks (JSON lines)")
    c.add_argument("which", choices=("prop61", "zeros", "thm62", "rv", "superscan", "halfp"))
    c.add_argument("--p", type=int)
    c.add_argument("--n-max", type=int)
    c.add_argument("--p-max", type=int, default=13)
    c.add_argument("--r-max", type=int, default=2)
    c.add_argument("--m-max", type=int, default=4)
    c.set_defaults(func=cmd_congr)

    h = sub.add_parser("hyper", parents=[common], help="hypergeometric series")
    h.add_argument("which", choices=("eval", "inhom"))
    h.add_argument("--upper", required=True)
    h.add_argument("--lower", default="")
    h.add_argument("--z")
    h.add_argument("--max-terms", type=int, default=100_000)
    h.add_argument("--rhs-file")
    h.add_argument("--order", type=int, default=20)
    h.add_argument("--C", default="0")
    h.set_defaults(func=cmd_hyper)

    z = sub.add_parser("zeta", parents=[common], help="ζ(k) and ζ_Q(k)")
    z.add_argument("which", choices=("q", "riemann"))
    z.add_argument("--k", type=int, required=True)
    z.add_argument("--alpha")
    z.add_argument("--beta")
    z.add_argument("--method", choices=("closed", "series", "both"), default="closed")
    z.add_argument("--terms", type=int, default=400)
    z.set_defaults(func=cmd_zeta)

    p = sub.add_parser("spectrum", parents=[common], help="Galerkin spectrum and partial ζ_Q(s)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--basis-size", type=int, default=2000)
    p.add_argument("--count", type=int)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--show", type=int, default=10, help="number of eigenvalues to print")
    p.add_argument("--method", choices=("chains", "bisection", "dense"), default="chains")
    p.set_defaults(func=cmd_spectrum)

    q = sub.add_parser("integrate", parents=[common], help="quadrature of J_k(n), w_k(z)")
    q.add_argument("which", choices=("jk", "vertical", "wk"))
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, default=0)
    q.add_argument("--z", default="0")
    q.add_argument("--tol", type=float, default=1e-10)
    q.add_argument("--form", choices=("cube", "reduced"))
    q.add_argument("--method", choices=("closed", "quadrature"), default="closed")
    q.set_defaults(func=cmd_integrate)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    v.add_argument("--suite", choices=("quick", "full"), default="quick")
    v.add_argument("--only", help="comma-separated criterion numbers")
    v.add_argument("--report", help="also write the JSON report to this path")
    v.set_defaults(func=cmd_verify)
    return ap


def _finalize(args):
    if not hasattr(args, "format"):
        args.format = "text"
    if not hasattr(args, "prec"):
        args.prec = _default_prec()
    if not hasattr(args, "threads"):
        args.threads = 1
    if args.prec < 53:
        raise UsageError("--prec must be >= 53")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.command == "congr":
        if args.which in ("prop61", "zeros") and args.p is None:
            raise UsageError("--p is required")
        if args.which == "zeros" and args.n_max is None:
            raise UsageError("--n-max is required")
    if args.command == "zeta" and args.which == "q" and (args.alpha is None or args.beta is None):
        raise UsageError("--alpha and --beta are required")
    if args.command == "hyper":
        if args.which == "eval" and args.z is None:
            raise UsageError("--z is required")
        if args.which == "inhom" and args.rhs_file is None:
            raise UsageError("--rhs-file is required")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _finalize(args)
        rc = args.func(args)
        return 0 if rc is None else rc
    except UsageError as exc:
        sys.stderr.write(f"aperylike: usage error: {exc}\n")
        return 2
    except Exception as exc:
        sys.stderr.write(f"aperylike: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
