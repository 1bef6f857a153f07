"""Exact scalars, certified brackets, and the pi reference oracle.

The universal scalar is :class:`fractions.Fraction`: arbitrary-precision,
always reduced, denominator always positive. Everything here is pure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

GUARD_DIGITS = 5


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts ints and Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class ConstantBracket:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("bracket endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def error_bound(self, x) -> Fraction:
        """Largest possible distance from ``x`` to a point of the bracket."""
        return max(abs(x - self.lo), abs(x - self.hi))

    def __neg__(self):
        return ConstantBracket(-self.hi, -self.lo)


@dataclass(frozen=True)
class ConstantExpr:
    """The number ``pi_coeff * pi + offset``."""

    pi_coeff: Fraction = Fraction(0)
    offset: Fraction = Fraction(0)

    def __neg__(self):
        return ConstantExpr(-self.pi_coeff, -self.offset)

    def __str__(self):
        if self.pi_coeff == 0:
            return str(self.offset)
        c = self.pi_coeff
        if c == 1:
            s = "pi"
        elif c == -1:
            s = "-pi"
        elif c.denominator == 1:
            s = f"{c.numerator}*pi"
        elif c.numerator in (1, -1):
            s = f"{'-' if c < 0 else ''}pi/{c.denominator}"
        else:
            s = f"{c.numerator}*pi/{c.denominator}"
        if self.offset > 0:
            s += f" + {self.offset}"
        elif self.offset < 0:
            s += f" - {-self.offset}"
        return s


def _arctan_inv_bounds(x: int, terms: int) -> tuple[Fraction, Fraction, Fraction]:
    """Bounds on arctan(1/x) from the alternating Taylor series.

    Returns (lo, hi, next_term) where the true value lies strictly between
    the partial sums of ``terms`` and ``terms + 1`` terms.
    """
    s = Fraction(0)
    x2 = x * x
    power = x
    for k in range(terms):
        t = Fraction(1, (2 * k + 1) * power)
        s = s + t if k % 2 == 0 else s - t
        power *= x2
    nxt = Fraction(1, (2 * terms + 1) * power)
    other = s - nxt if terms % 2 == 1 else s + nxt
    return min(s, other), max(s, other), nxt


def _machin_bracket(eps: Fraction) -> tuple[Fraction, Fraction]:
    """An interval around pi of width <= eps, via 16 atan(1/5) - 4 atan(1/239)."""
    terms = 1
    while True:
        lo5, hi5, t5 = _arctan_inv_bounds(5, terms)
        lo239, hi239, t239 = _arctan_inv_bounds(239, terms)
        if 16 * t5 + 4 * t239 <= eps:
            return 16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239
        # each extra term buys log10(25) ~ 1.4 digits for the slow series
        terms += max(1, terms // 2)


@functools.lru_cache(maxsize=64)
def _pi_floor(m: int) -> int:
    """floor(pi * 10**m), certified."""
    scale = 10**m
    extra = 3
    while True:
        lo, hi = _machin_bracket(Fraction(1, scale * 10**extra))
        f_lo = (lo * scale).__floor__()
        f_hi = (hi * scale).__floor__()
        if f_lo == f_hi:
            return f_lo
        extra += 5


def pi_bracket(digits: int) -> ConstantBracket:
    """Certified rational interval around pi, width at most ``10**-digits``.

    The interval is the decimal cell ``[F, F + 1] / 10**m`` containing pi
    with ``m = digits + GUARD_DIGITS``, so brackets for increasing
    ``digits`` are nested.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    m = digits + GUARD_DIGITS
    f = _pi_floor(m)
    return ConstantBracket(Fraction(f, 10**m), Fraction(f + 1, 10**m))


def const_bracket(expr: ConstantExpr, digits: int) -> ConstantBracket:
    if digits < 1:
        raise ValueError("digits must be >= 1")
    c = Fraction(expr.pi_coeff)
    off = Fraction(expr.offset)
    if c == 0:
        return ConstantBracket(off, off)
    magnitude = len(str(abs(c).__ceil__()))
    # pi_bracket already carries GUARD_DIGITS beyond what it is asked for
    pb = pi_bracket(digits + magnitude)
    a, b = c * pb.lo + off, c * pb.hi + off
    if c < 0:
        a, b = b, a
    return ConstantBracket(a, b)


def to_decimal(x, digits: int) -> str:
    """Decimal expansion of ``x`` truncated toward zero."""
    x = Fraction(x)
    if digits < 0:
        raise ValueError("digits must be >= 0")
    scaled = abs(x.numerator) * 10**digits // x.denominator
    int_part, frac_part = divmod(scaled, 10**digits)
    s = str(int_part)
    if digits:
        s += "." + str(frac_part).zfill(digits)
    if x < 0 and scaled:
        s = "-" + s
    return s


def to_scientific(x, sig: int = 3) -> str:
    """Scientific notation with a truncated ``sig``-digit mantissa.

    >>> to_scientific(Fraction(1, 52))
    '1.92e-02'
    """
    x = Fraction(x)
    if x == 0:
        return "0." + "0" * (sig - 1) + "e+00"
    sign = "-" if x < 0 else ""
    x = abs(x)
    e = len(str(x.numerator)) - len(str(x.denominator))
    # normalise so that 10**e <= x < 10**(e+1)
    while x < Fraction(10) ** e:
        e -= 1
    while x >= Fraction(10) ** (e + 1):
        e += 1
    mant = (x * Fraction(10) ** (sig - 1 - e)).__floor__()
    digits = str(mant)
    body = digits[0] + ("." + digits[1:] if sig > 1 else "")
    return f"{sign}{body}e{'-' if e < 0 else '+'}{abs(e):02d}"


def decimals_from_error(err) -> int:
    """floor(-log10(err)) clamped at 0, computed exactly.

    ``err`` must be positive.
    """
    err = Fraction(err)
    if err <= 0:
        raise ValueError("error must be positive")
    if err >= 1:
        return 0
    k = max(0, len(str(err.denominator)) - len(str(err.numerator)) - 1)
    # largest k with err <= 10**-k
    while err * 10**k > 1:
        k -= 1
    while err * 10 ** (k + 1) <= 1:
        k += 1
    return k
