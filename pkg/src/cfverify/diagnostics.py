"""Convergence diagnostics for continued fractions.

The ratio rho_n = |a_n| / (|b_n| |b_{n-1}|) drives the classification: a
limit below 1/4 is the Worpitzky regime, exactly 1/4 is the boundary case
where convergence needs an extra hypothesis (here: divergence of sum |b_n|),
and anything else is left undecided by the ratio test.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cf_core import CFSpec, convergent, seq_eval
from .errors import (
    BracketTooWideError,
    DivisionByZeroError,
    SymbolicLimitUnavailableError,
)
from .numerics import ConstantBracket, decimals_from_error

WORPITZKY = Fraction(1, 4)


class LimitKind(str, enum.Enum):
    FINITE = "finite"
    ZERO = "zero"
    INFINITE = "infinite"


class Regime(str, enum.Enum):
    SUB_WORPITZKY = "SubWorpitzky"
    WORPITZKY_BOUNDARY = "WorpitzkyBoundary"
    INDETERMINATE = "IndeterminateByRatioTest"


@dataclass(frozen=True)
class RatioLimit:
    kind: LimitKind
    value: Optional[Fraction] = None

    def __post_init__(self):
        if (self.value is not None) != (self.kind is LimitKind.FINITE):
            raise ValueError("value must be given exactly for finite limits")

    def __str__(self):
        if self.kind is LimitKind.FINITE:
            return str(self.value)
        return "0" if self.kind is LimitKind.ZERO else "∞"


@dataclass(frozen=True)
class RegimeReport:
    limit: RatioLimit
    regime: Regime
    rho_monotone_from: Optional[int]
    abs_b_sum_diverges: bool

    def summary(self) -> str:
        parts = [f"limit {self.limit}", self.regime.value]
        if self.rho_monotone_from is not None:
            parts.append(f"rho decreasing from n={self.rho_monotone_from}")
        else:
            parts.append("rho not eventually decreasing")
        parts.append("sum|b| diverges" if self.abs_b_sum_diverges else "sum|b| converges")
        return ", ".join(parts)

    def to_dict(self) -> dict:
        return {
            "limit": str(self.limit),
            "limit_kind": self.limit.kind.value,
            "regime": self.regime.value,
            "rho_monotone_from": self.rho_monotone_from,
            "abs_b_sum_diverges": self.abs_b_sum_diverges,
        }


def rho(cf: CFSpec, n: int) -> Fraction:
    if n < 2:
        raise ValueError("rho_n is defined for n >= 2")
    bn, bm = seq_eval(cf.b, n), seq_eval(cf.b, n - 1)
    if bn == 0 or bm == 0:
        raise DivisionByZeroError(f"b_{n if bn == 0 else n - 1} = 0, rho_{n} undefined")
    return abs(seq_eval(cf.a, n)) / (abs(bn) * abs(bm))


def _branch_limit(a, b_here, b_prev) -> RatioLimit:
    if b_here.is_zero() or b_prev.is_zero():
        raise DivisionByZeroError("b tail is identically zero")
    if a.is_zero():
        return RatioLimit(LimitKind.ZERO)
    deg = a.degree - b_here.degree - b_prev.degree
    if deg > 0:
        return RatioLimit(LimitKind.INFINITE)
    if deg < 0:
        return RatioLimit(LimitKind.ZERO)
    return RatioLimit(
        LimitKind.FINITE, abs(a.leading_ratio) / abs(b_here.leading_ratio * b_prev.leading_ratio)
    )


def rho_limit(cf: CFSpec) -> RatioLimit:
    """Limit of rho_n from degrees and leading coefficients of the tails."""
    if cf.a.branches is None or cf.b.branches is None:
        raise SymbolicLimitUnavailableError("rho limit needs closed-form tails for a and b")
    p = math.lcm(cf.a.period, cf.b.period)
    limits = {
        _branch_limit(cf.a.branches[j % cf.a.period],
                      cf.b.branches[j % cf.b.period],
                      cf.b.branches[(j - 1) % cf.b.period])
        for j in range(p)
    }
    if len(limits) != 1:
        raise SymbolicLimitUnavailableError("parity branches of rho have different limits")
    return limits.pop()


def _abs_sum_diverges(seq) -> bool:
    # sum |t(n)| diverges iff t is nonzero with deg(num) - deg(den) >= -1
    return any(not t.is_zero() and t.degree >= -1 for t in seq.branches)


def regime_of(limit: RatioLimit) -> Regime:
    if limit.kind is LimitKind.ZERO:
        return Regime.SUB_WORPITZKY
    if limit.kind is LimitKind.FINITE:
        if limit.value < WORPITZKY:
            return Regime.SUB_WORPITZKY
        if limit.value == WORPITZKY:
            return Regime.WORPITZKY_BOUNDARY
    return Regime.INDETERMINATE


def classify(cf: CFSpec, probe_depth: int = 100) -> RegimeReport:
    limit = rho_limit(cf)
    monotone_from = None
    if probe_depth >= 3:
        try:
            later = rho(cf, probe_depth)
            m = probe_depth
            while m > 2:
                earlier = rho(cf, m - 1)
                if not earlier > later:
                    break
                m, later = m - 1, earlier
        except DivisionByZeroError:
            pass
        else:
            monotone_from = m if m < probe_depth else None
    return RegimeReport(limit, regime_of(limit), monotone_from, _abs_sum_diverges(cf.b))


def correct_decimals(x, target: ConstantBracket) -> int:
    """floor(-log10 E) for the certified error bound E of x against target."""
    x = Fraction(x)
    err = target.error_bound(x)
    if target.width == 0:
        if err == 0:
            raise ValueError("x equals the exact target; decimals are unbounded")
        return decimals_from_error(err)
    if target.contains(x) or 2 * target.width > err:
        raise BracketTooWideError(
            "bracket is too wide to certify this error; request more digits")
    return decimals_from_error(err)


def empirical_rate(cf: CFSpec, target: ConstantBracket, depths) -> list:
    """(depth, certified error bound, ratio to the previous listed error)."""
    errs = [(d, target.error_bound(convergent(cf, d))) for d in depths]
    if errs and 2 * target.width > min(e for _, e in errs):
        raise BracketTooWideError(
            "bracket width exceeds half the smallest measured error")
    out = []
    prev = None
    for d, e in errs:
        out.append((d, e, None if prev is None or prev == 0 else e / prev))
        prev = e
    return out
