"""Leibniz partial sums and CF-versus-series comparison tables."""

from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass
from fractions import Fraction

from .cf_core import CFSpec, convergent
from .diagnostics import correct_decimals
from .errors import BracketTooWideError
from .numerics import ConstantBracket, ConstantExpr, const_bracket, to_scientific

HEADER = ("n", "series_error", "cf_error", "error_ratio", "cf_decimals")


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    series_error: Fraction
    cf_error: Fraction
    error_ratio: Fraction
    cf_decimals: int


def leibniz_partial(n: int) -> Fraction:
    """1 - 1/3 + 1/5 - ... + (-1)^n/(2n+1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    sums = _LEIBNIZ_SUMS
    if len(sums) <= n:
        with _LEIBNIZ_LOCK:
            while len(sums) <= n:
                k = len(sums)
                sums.append(sums[-1] + Fraction((-1) ** k, 2 * k + 1))
    return sums[n]


# append-only memo of S_0, S_1, ...
_LEIBNIZ_SUMS = [Fraction(1)]
_LEIBNIZ_LOCK = threading.Lock()


def _magnitude(expr: ConstantExpr, bracket: ConstantBracket) -> ConstantExpr:
    if bracket.hi < 0:
        return -expr
    if bracket.lo > 0:
        return expr
    raise BracketTooWideError("cannot decide the sign of the target")


def _check(err: Fraction, width: Fraction, what: str):
    if 10 * width > err:
        raise BracketTooWideError(
            f"{what}: precision {to_scientific(width)} is not below a tenth "
            f"of the error {to_scientific(err)}; raise --digits")


def compare_table(cf: CFSpec, expr: ConstantExpr, depths, digits: int) -> list:
    """One row per depth: Leibniz S_n against |expr|, the CF against expr.

    Errors are certified upper bounds from the target bracket.  Every
    error must exceed ten times the nominal precision ``10**-digits``.
    """
    target = const_bracket(expr, digits)
    series_target = const_bracket(_magnitude(expr, target), digits)
    rows = []
    for n in depths:
        f = convergent(cf, n)
        s_err = series_target.error_bound(leibniz_partial(n))
        c_err = target.error_bound(f)
        if target.width:
            nominal = max(target.width, Fraction(1, 10**digits))
            _check(c_err, nominal, f"CF depth {n}")
            _check(s_err, nominal, f"series n={n}")
        rows.append(ComparisonRow(n, s_err, c_err,
                                  s_err / c_err if c_err else None,
                                  correct_decimals(f, target) if c_err else None))
    return rows


def _fmt(x, exact: bool) -> str:
    if x is None:
        return "inf"
    return str(x) if exact else to_scientific(x)


def render_report(rows, fmt: str = "text", exact: bool = False) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        for r in rows:
            w.writerow([r.n, _fmt(r.series_error, exact), _fmt(r.cf_error, exact),
                        _fmt(r.error_ratio, exact),
                        "inf" if r.cf_decimals is None else r.cf_decimals])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    titles = ("n", "Leibniz error", "CF error", "error ratio", "decimals")
    body = [(str(r.n), _fmt(r.series_error, exact), _fmt(r.cf_error, exact),
             _fmt(r.error_ratio, exact),
             "inf" if r.cf_decimals is None else str(r.cf_decimals)) for r in rows]
    widths = [max(len(t), *(len(b[i]) for b in body)) if body else len(t)
              for i, t in enumerate(titles)]
    line = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    out = [line(titles), "  ".join("-" * w for w in widths)]
    out += [line(b) for b in body]
    return "\n".join(out) + "\n"
