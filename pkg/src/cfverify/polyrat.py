"""Rational functions in the index ``n`` with exact rational coefficients.

A :class:`PolyRat` is kept in canonical form:

* numerator and denominator are coprime over Q,
* the denominator has integer coefficients with content 1 and a positive
  leading coefficient,
* the zero function is ``num=() / den=(1,)``.

Canonical form is unique, so ``==`` is equality of rational functions.
Coefficient tuples are in ascending powers of n.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .errors import TailPoleError, ZeroDenominatorError

Poly = tuple  # tuple[Fraction, ...], ascending, no trailing zeros


def _trim(p) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def pscale(p: Poly, c) -> Poly:
    return _trim(c * x for x in p)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = r[-1] / lead
        quot[shift] = c
        for j, b in enumerate(q):
            r[shift + j] -= c * b
        r = list(_trim(r))
    return _trim(quot), tuple(r)


def pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (``(1,)`` when coprime; ``()`` only if both are zero)."""
    while q:
        p, q = q, pdivmod(p, q)[1]
    if not p:
        return ()
    return pscale(p, 1 / p[-1])


def peval(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pshift(p: Poly, s) -> Poly:
    """Coefficients of p(n + s)."""
    out: Poly = ()
    base = _trim((Fraction(s), Fraction(1)))
    for c in reversed(p):
        out = padd(pmul(out, base), _trim((c,)))
    return out


def integer_roots(p: Poly) -> list[int]:
    """All integer roots of a nonzero polynomial, sorted."""
    if not p:
        raise ValueError("zero polynomial has every integer as a root")
    lcm = reduce(math.lcm, (c.denominator for c in p), 1)
    ints = [int(c * lcm) for c in p]
    roots = set()
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(0)
    ints = ints[k:]
    if len(ints) == 1:
        return sorted(roots)
    c0, lead = abs(ints[0]), abs(ints[-1])
    bound = 1 + max(abs(c) for c in ints[:-1]) // lead
    limit = min(bound, c0)
    cands = set()
    d = 1
    while d * d <= c0 and d <= limit:
        if c0 % d == 0:
            cands.add(d)
            if c0 // d <= limit:
                cands.add(c0 // d)
        d += 1
    poly = tuple(Fraction(c) for c in ints)
    for d in cands:
        for x in (d, -d):
            if peval(poly, x) == 0:
                roots.add(x)
    return sorted(roots)


def _poly_degree(p: Poly) -> int:
    return len(p) - 1 if p else -1


class PolyRat:
    """Canonical rational function ``num(n) / den(n)``."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,)):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDenominatorError("denominator polynomial is identically zero")
        if not num:
            den = (Fraction(1),)
        else:
            g = pgcd(num, den)
            if len(g) > 1:
                num, den = pdivmod(num, g)[0], pdivmod(den, g)[0]
            lcm = reduce(math.lcm, (c.denominator for c in den), 1)
            ints = [int(c * lcm) for c in den]
            content = reduce(math.gcd, ints, 0)
            s = Fraction(lcm, content)
            if den[-1] < 0:
                s = -s
            num, den = pscale(num, s), pscale(den, s)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "PolyRat":
        return cls((Fraction(c),))

    @classmethod
    def poly(cls, *coeffs) -> "PolyRat":
        return cls(coeffs)

    @classmethod
    def var(cls) -> "PolyRat":
        return cls((0, 1))

    @classmethod
    def coerce(cls, x) -> "PolyRat":
        if isinstance(x, PolyRat):
            return x
        return cls.const(x)

    # --- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def is_constant(self) -> bool:
        return self.is_polynomial() and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    @property
    def degree(self) -> int:
        """deg(num) - deg(den); -inf-like sentinel is avoided: zero raises."""
        if self.is_zero():
            raise ValueError("degree of the zero function")
        return _poly_degree(self.num) - _poly_degree(self.den)

    @property
    def leading_ratio(self) -> Fraction:
        """Ratio of leading coefficients (the asymptotic constant)."""
        if self.is_zero():
            return Fraction(0)
        return self.num[-1] / self.den[-1]

    def poles(self) -> list[int]:
        return integer_roots(self.den) if len(self.den) > 1 else []

    def zeros(self) -> list[int]:
        return integer_roots(self.num) if self.num else []

    # --- evaluation -------------------------------------------------------

    def __call__(self, n) -> Fraction:
        d = peval(self.den, n)
        if d == 0:
            raise TailPoleError(n)
        return peval(self.num, n) / d

    def shift(self, s) -> "PolyRat":
        """The function n -> self(n + s)."""
        if s == 0:
            return self
        return PolyRat(pshift(self.num, s), pshift(self.den, s))

    # --- field operations -------------------------------------------------

    def __add__(self, other):
        o = PolyRat.coerce(other)
        return PolyRat(
            padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return PolyRat(pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-PolyRat.coerce(other))

    def __rsub__(self, other):
        return PolyRat.coerce(other) - self

    def __mul__(self, other):
        o = PolyRat.coerce(other)
        return PolyRat(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def reciprocal(self) -> "PolyRat":
        if self.is_zero():
            raise ZeroDenominatorError("reciprocal of the zero function")
        return PolyRat(self.den, self.num)

    def __truediv__(self, other):
        return self * PolyRat.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return PolyRat.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = PolyRat.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __abs__(self):
        return -self if self.leading_ratio < 0 else self

    # --- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PolyRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == PolyRat.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        fmt = lambda p: "[" + ", ".join(str(c) for c in p) + "]"  # noqa: E731
        return f"PolyRat(num={fmt(self.num)}, den={fmt(self.den)})"

    def __str__(self):
        from .expr_parser import print_expr

        return print_expr(self)
