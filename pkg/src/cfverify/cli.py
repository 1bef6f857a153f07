"""Command-line front end.

Exit codes: 0 success / verified, 1 verification failed, 2 usage or parse
error, 3 numeric error (pole, zero scaling, undefined convergent, bracket
too wide).

``--depth N`` always means the convergent f_N built from a_1..a_N and
b_0..b_N.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bench import compare_table, render_report
from .cf_core import (
    CFSpec,
    CoefficientSequence,
    iter_convergents,
    load_spec,
    preset,
    PRESETS,
    save_spec,
)
from .diagnostics import classify
from .errors import CFError, DCoefficientPoleError, NumericError, UndefinedConvergentError
from .expr_parser import parse_constant_expr, parse_sequence_expr
from .hypergeom import HypParams, first_d_pole, gauss_cf
from .numerics import const_bracket, decimals_from_error, parse_rational, to_decimal
from .transforms import (
    apply_equivalence,
    as_scaling,
    coefficient_table,
    scaling_to_match_denominators,
)

ENV_DIGITS = "CFVERIFY_DIGITS"
EXIT_OK, EXIT_UNVERIFIED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(CFError):
    pass


@dataclass(frozen=True)
class VerificationVerdict:
    verified: bool
    achieved_decimals: int
    requested_decimals: int
    depth_used: int

    def __post_init__(self):
        if self.verified != (self.achieved_decimals >= self.requested_decimals):
            raise ValueError("verdict is inconsistent with its decimal counts")


def default_digits(fallback: int = 40) -> int:
    raw = os.environ.get(ENV_DIGITS)
    if not raw:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ENV_DIGITS} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{ENV_DIGITS} must be a positive integer, got {raw!r}")
    return value


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        v = 0
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _depth_list(text):
    return [_positive(part) for part in text.split(",") if part.strip()]


def _head(text):
    if not text:
        return []
    return [_rational(part) for part in text.split(",")]


def _add_source(p: argparse.ArgumentParser):
    g = p.add_argument_group("continued fraction source")
    g.add_argument("--preset", choices=sorted(PRESETS))
    g.add_argument("--file", help="CF spec file (JSON)")
    g.add_argument("--a-expr", help="closed form of a_n, e.g. '(n-1)^2'")
    g.add_argument("--b-expr", help="closed form of b_n, e.g. '-(2*n-1)'")
    g.add_argument("--a-head", type=_head, default=[], help="explicit a_1,a_2,... overriding the formula")
    g.add_argument("--b-head", type=_head, default=[], help="explicit b_1,b_2,...")
    g.add_argument("--b0", type=_rational, default=Fraction(0))


def _source(args) -> CFSpec:
    given = [x for x in ("preset", "file") if getattr(args, x)]
    exprs = args.a_expr is not None or args.b_expr is not None
    if len(given) + exprs != 1:
        raise UsageError("give exactly one of --preset, --file, or --a-expr/--b-expr")
    if args.preset:
        return preset(args.preset)
    if args.file:
        try:
            return load_spec(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    if args.a_expr is None or args.b_expr is None:
        raise UsageError("--a-expr and --b-expr must be given together")
    return CFSpec(args.b0,
                  CoefficientSequence(args.a_head, parse_sequence_expr(args.a_expr)),
                  CoefficientSequence(args.b_head, parse_sequence_expr(args.b_expr)))


def _emit_spec(cf: CFSpec, path, out):
    if path in (None, "-"):
        out.write(cf.dumps())
    else:
        save_spec(cf, path)
        out.write(f"wrote {path}\n")


def _fmt(x) -> str:
    return "undefined" if x is None else str(x)


def cmd_eval(args, out):
    cf = _source(args)
    rows = []
    for n, A, B in iter_convergents(cf):
        rows.append((n, A / B if B != 0 else None))
        if n == args.depth:
            break
    shown = rows if args.show_all else rows[-1:]
    for n, v in shown:
        if args.json:
            obj = {"depth": n, "value": _fmt(v)}
            if args.digits is not None and v is not None:
                obj["decimal"] = to_decimal(v, args.digits)
            out.write(json.dumps(obj) + "\n")
            continue
        text = _fmt(v)
        if args.digits is not None and v is not None:
            text += f" ≈ {to_decimal(v, args.digits)}"
        out.write(f"f_{n} = {text}\n" if args.show_all else text + "\n")
    if rows[-1][1] is None:
        raise UndefinedConvergentError(args.depth)
    return EXIT_OK


def _coef_lines(cf: CFSpec, upto=5):
    lines = ["   n  a_n  b_n"]
    for n, a, b in coefficient_table(cf, upto):
        lines.append(f"  {n:>2}  {_fmt(a)}  {_fmt(b)}")
    return "\n".join(lines) + "\n"


def cmd_gauss(args, out):
    pole = first_d_pole(args.a, args.b, args.c)
    if pole is not None:
        raise DCoefficientPoleError(pole)
    p = HypParams(args.a, args.b, args.c)
    sign = "-" if args.negate else ""
    cf = gauss_cf(p, args.z, negate=args.negate, max_head=args.max_head,
                  name=f"gauss({args.a},{args.b},{args.c};{args.z})")
    if args.emit == "-":
        out.write(cf.dumps())
    else:
        out.write(f"{sign}R({args.a}, {args.b}, {args.c}; z={args.z})\n")
        out.write(_coef_lines(cf))
        if args.emit:
            save_spec(cf, args.emit)
            out.write(f"wrote {args.emit}\n")
    if args.depth:
        for n, A, B in iter_convergents(cf):
            if n == args.depth:
                if B == 0:
                    raise UndefinedConvergentError(n)
                v = A / B
                text = f"f_{n} = {v}"
                if args.digits is not None:
                    text += f" ≈ {to_decimal(v, args.digits)}"
                out.write(text + "\n")
                break
    return EXIT_OK


def cmd_transform(args, out):
    cf = _source(args)
    chosen = [x for x in (args.scale_expr, args.match_b_expr, args.scale_file) if x is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --scale-expr, --match-b-expr, --scale-file")
    if args.match_b_expr is not None:
        r = scaling_to_match_denominators(cf, parse_sequence_expr(args.match_b_expr))
    elif args.scale_file is not None:
        try:
            with open(args.scale_file, encoding="utf-8") as fh:
                r = as_scaling(CoefficientSequence.from_dict(json.load(fh)))
        except OSError as exc:
            raise UsageError(f"cannot read {args.scale_file}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON in {args.scale_file}: {exc}") from None
    else:
        r = as_scaling(CoefficientSequence(args.scale_head, parse_sequence_expr(args.scale_expr)))
    new = apply_equivalence(cf, r)
    out.write("   n  r_n  a_n  b_n  ->  a~_n  b~_n\n")
    for (n, a, b), (_, ta, tb) in zip(coefficient_table(cf), coefficient_table(new)):
        out.write(f"  {n:>2}  {r(n)}  {_fmt(a)}  {_fmt(b)}  ->  {_fmt(ta)}  {_fmt(tb)}\n")
    _emit_spec(new, args.emit, out)
    return EXIT_OK


def cmd_diagnose(args, out):
    cf = _source(args)
    report = classify(cf, args.probe)
    if args.json:
        out.write(json.dumps(report.to_dict()) + "\n")
    else:
        out.write(report.summary() + "\n")
    return EXIT_OK


def verify(cf: CFSpec, target, digits: int, max_depth: int, work_digits=None) -> VerificationVerdict:
    """Deepen until the certified decimals reach ``digits`` or ``max_depth``."""
    bracket = const_bracket(target, work_digits or digits + 10)
    achieved, depth = 0, 0
    for n, A, B in iter_convergents(cf):
        depth = n
        if B != 0:
            err = bracket.error_bound(A / B)
            achieved = digits if err == 0 else decimals_from_error(err)
            if achieved >= digits:
                break
        if n >= max_depth:
            break
    return VerificationVerdict(achieved >= digits, achieved, digits, depth)


def cmd_verify(args, out):
    cf = _source(args)
    target = parse_constant_expr(args.target)
    work = max(args.digits + 10, default_digits(0))
    verdict = verify(cf, target, args.digits, args.max_depth, work)
    if args.json:
        out.write(json.dumps({"verified": verdict.verified,
                              "achieved_decimals": verdict.achieved_decimals,
                              "requested_decimals": verdict.requested_decimals,
                              "depth_used": verdict.depth_used,
                              "target": str(target)}) + "\n")
    elif verdict.verified:
        out.write(f"verified: {verdict.achieved_decimals} correct decimals of {target} "
                  f"at depth {verdict.depth_used} (requested {verdict.requested_decimals})\n")
    else:
        out.write(f"NOT verified: {verdict.achieved_decimals} correct decimals of {target} "
                  f"at depth {verdict.depth_used} (requested {verdict.requested_decimals})\n")
    return EXIT_OK if verdict.verified else EXIT_UNVERIFIED


def cmd_compare(args, out):
    cf = preset("conjecture-pi4")
    digits = args.digits if args.digits is not None else default_digits()
    rows = compare_table(cf, parse_constant_expr(args.target), args.depths, digits)
    if args.json:
        for r in rows:
            out.write(json.dumps({"n": r.n, "series_error": str(r.series_error),
                                  "cf_error": str(r.cf_error),
                                  "error_ratio": str(r.error_ratio),
                                  "cf_decimals": r.cf_decimals}) + "\n")
    else:
        out.write(render_report(rows, args.format, exact=args.exact))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cfverify",
        description="Exact continued-fraction construction, transformation and verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate convergents exactly")
    _add_source(p)
    p.add_argument("--depth", type=_positive, default=10)
    p.add_argument("--digits", type=int, help="also print truncated decimals")
    p.add_argument("--show-all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gauss", help="build the unit-denominator Gauss CF for +-R(a,b,c;z)")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--z", type=_rational, required=True)
    p.add_argument("--negate", action="store_true")
    p.add_argument("--max-head", type=_positive, default=8)
    p.add_argument("--depth", type=_positive)
    p.add_argument("--digits", type=int)
    p.add_argument("--emit", help="write the CF spec here ('-' for stdout)")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("transform", help="apply an equivalence transformation")
    _add_source(p)
    p.add_argument("--scale-expr", help="closed form of r_n")
    p.add_argument("--scale-head", type=_head, default=[], help="explicit r_1,r_2,...")
    p.add_argument("--scale-file", help="scaling sequence as a JSON sequence object")
    p.add_argument("--match-b-expr", help="choose r_n so the new b_n equals this")
    p.add_argument("--emit", help="write the transformed spec here (default stdout)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("diagnose", help="ratio-test convergence diagnostics")
    _add_source(p)
    p.add_argument("--probe", type=_positive, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("verify", help="certify agreement with a constant")
    _add_source(p)
    p.add_argument("--target", required=True, help="e.g. '-pi/4'")
    p.add_argument("--digits", type=_positive, default=10)
    p.add_argument("--max-depth", type=_positive, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="conjecture CF vs Leibniz series error table")
    p.add_argument("--depths", type=_depth_list, default=[5, 15, 25])
    p.add_argument("--digits", type=_positive, help=f"bracket precision (default ${ENV_DIGITS} or 40)")
    p.add_argument("--target", default="-pi/4")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--exact", action="store_true", help="print errors as exact p/q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)
    return ap


# options whose values routinely start with "-" ("-pi/4", "-(2*n-1)", "-1")
_VALUE_OPTIONS = {
    "--a-expr", "--b-expr", "--a-head", "--b-head", "--b0", "--scale-expr",
    "--scale-head", "--match-b-expr", "--target", "--a", "--b", "--c", "--z",
}


def _glue_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except NumericError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except (CFError, ValueError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
