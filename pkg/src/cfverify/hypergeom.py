"""Gauss hypergeometric partial sums and the contiguous-ratio continued fraction.

The ratio 2F1(a, b+1; c+1; z) / 2F1(a, b; c; z) has the expansion
1 / (1 - d_1 z / (1 - d_2 z / ...)) with

    d_{2k}   = (b + k)(c - a + k) / ((c + 2k - 1)(c + 2k))
    d_{2k+1} = (a + k)(c - b + k) / ((c + 2k)(c + 2k + 1))

:func:`gauss_cf` writes (plus or minus) that ratio as b0 + K(a_n / b_n) with
unit denominators: a_1 = +-1 and a_n = -d_{n-1} z for n >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cf_core import CFSpec, CoefficientSequence
from .errors import DCoefficientPoleError
from .polyrat import PolyRat


@dataclass(frozen=True)
class HypParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.c <= 0 and self.c.denominator == 1:
            raise ValueError(f"c = {self.c} is zero or a negative integer")


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+k-1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = Fraction(1)
    x = Fraction(x)
    for j in range(k):
        out *= x + j
    return out


def hyp2f1_partial(p: HypParams, z, N: int) -> Fraction:
    """Sum of the first N+1 terms of the 2F1 power series, exactly."""
    z = Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(N):
        # ratio of consecutive terms avoids recomputing Pochhammer products
        term = term * (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1)) * z
        total += term
        if term == 0:
            break
    return total


def gauss_d(p: HypParams, n: int) -> Fraction:
    if n < 1:
        raise ValueError("d_n is defined for n >= 1")
    k, odd = divmod(n, 2)
    if odd:
        num = (p.a + k) * (p.c - p.b + k)
        den = (p.c + 2 * k) * (p.c + 2 * k + 1)
    else:
        num = (p.b + k) * (p.c - p.a + k)
        den = (p.c + 2 * k - 1) * (p.c + 2 * k)
    if den == 0:
        raise DCoefficientPoleError(n)
    return num / den


def first_d_pole(a, b, c):
    """Smallest n whose d_n denominator vanishes, or None.

    Works on raw parameters, since HypParams refuses exactly the values of
    c that produce a pole.
    """
    c = Fraction(c)
    if c > 0 or c.denominator != 1:
        return None
    # the denominators are (c+n-1)(c+n) for n >= 1; the first zero is at n = 1 - c or -c
    return max(1, int(-c))


def gauss_d_branches(p: HypParams) -> tuple:
    """Closed forms of d_n as rational functions of n: (even n, odd n)."""
    n = PolyRat.var()
    k_even = n / 2
    k_odd = (n - 1) / 2
    even = (p.b + k_even) * (p.c - p.a + k_even) / ((p.c + 2 * k_even - 1) * (p.c + 2 * k_even))
    odd = (p.a + k_odd) * (p.c - p.b + k_odd) / ((p.c + 2 * k_odd) * (p.c + 2 * k_odd + 1))
    return even, odd


def gauss_cf(p: HypParams, z, negate: bool = False, max_head: int = 8, name=None) -> CFSpec:
    """Unit-denominator continued fraction for +-R(a, b, c; z).

    When the two parity closed forms of a_n coincide (e.g. for
    (1/2, 0, 1/2) at z = -1) the tail is a single rational function and the
    head holds only a_1.  Otherwise a_2..a_max_head are materialized and the
    tail keeps one branch per parity of n.
    """
    z = Fraction(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    if max_head < 1:
        raise ValueError("max_head must be >= 1")
    d_even, d_odd = gauss_d_branches(p)
    # a_n = -d_{n-1} z: n odd uses the even-index formula shifted by one
    a_even_n = (-z * d_odd).shift(-1)
    a_odd_n = (-z * d_even).shift(-1)
    first = Fraction(-1 if negate else 1)
    if a_even_n == a_odd_n:
        head = [first]
    else:
        head = [first] + [-gauss_d(p, n - 1) * z for n in range(2, max_head + 1)]
    # d-coefficient poles inside the tail surface eagerly, not at evaluation
    for branch, parity in ((a_even_n, 0), (a_odd_n, 1)):
        for pole in branch.poles():
            if pole > len(head) and pole % 2 == parity:
                raise DCoefficientPoleError(pole - 1)
    return CFSpec(0, CoefficientSequence(head, (a_even_n, a_odd_n)),
                  CoefficientSequence.constant(1), name)
