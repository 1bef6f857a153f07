"""Generalized continued fractions ``b0 + K(a_n / b_n)`` and their convergents.

Coefficient sequences are a finite head of explicit values (indices
``1..H``) followed by a closed-form tail for ``n > H``.  The tail is a
:class:`PolyRat`, or a tuple of PolyRats selected by ``n mod period`` when
the closed form depends on parity (the general Gauss continued fraction).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import (
    SequenceExhaustedError,
    SpecFormatError,
    TailPoleError,
    UndefinedConvergentError,
    UnknownPresetError,
)
from .numerics import format_rational, parse_rational
from .polyrat import PolyRat


def _as_branches(tail) -> Optional[tuple]:
    if tail is None:
        return None
    if isinstance(tail, (tuple, list)):
        branches = tuple(PolyRat.coerce(t) for t in tail)
    else:
        branches = (PolyRat.coerce(tail),)
    if not branches:
        raise ValueError("empty tail branch list")
    if all(b == branches[0] for b in branches):
        branches = branches[:1]
    return branches


@dataclass(frozen=True, init=False, eq=False)
class CoefficientSequence:
    """Explicit head values for n = 1..H, closed-form tail afterwards.

    The stored form is canonical: trailing head entries that agree with the
    tail are dropped, and parity branches that coincide are merged.  Two
    sequences are therefore equal iff they generate the same values.
    """

    head: tuple
    branches: Optional[tuple]

    def __init__(self, head: Sequence = (), tail=None):
        head = [Fraction(x) for x in head]
        branches = _as_branches(tail)
        if branches is not None:
            while head:
                n = len(head)
                try:
                    if branches[n % len(branches)](n) != head[-1]:
                        break
                except TailPoleError:
                    break
                head.pop()
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "branches", branches)

    def __eq__(self, other):
        if not isinstance(other, CoefficientSequence):
            return NotImplemented
        return self.head == other.head and self.branches == other.branches

    def __hash__(self):
        return hash((self.head, self.branches))

    @classmethod
    def constant(cls, c) -> "CoefficientSequence":
        return cls((), PolyRat.const(c))

    @property
    def head_length(self) -> int:
        return len(self.head)

    @property
    def period(self) -> int:
        return len(self.branches) if self.branches else 0

    @property
    def tail(self) -> Optional[PolyRat]:
        """The tail as a single PolyRat, or None if absent or parity-split."""
        if self.branches is None or len(self.branches) != 1:
            return None
        return self.branches[0]

    def is_symbolic(self) -> bool:
        return self.branches is not None

    def branch_at(self, n: int) -> PolyRat:
        if self.branches is None:
            raise SequenceExhaustedError(n)
        return self.branches[n % len(self.branches)]

    def __call__(self, n: int) -> Fraction:
        return seq_eval(self, n)

    def values(self, upto: int) -> list:
        return [seq_eval(self, n) for n in range(1, upto + 1)]

    # pointwise algebra, kept symbolic --------------------------------------

    def _combine(self, other: "CoefficientSequence", op) -> "CoefficientSequence":
        h = max(self.head_length, other.head_length)
        head = [op(seq_eval(self, n), seq_eval(other, n)) for n in range(1, h + 1)]
        if self.branches is None or other.branches is None:
            return CoefficientSequence(head, None)
        p = math.lcm(self.period, other.period)
        tail = tuple(op(self.branches[j % self.period], other.branches[j % other.period])
                     for j in range(p))
        return CoefficientSequence(head, tail)

    def __mul__(self, other):
        if not isinstance(other, CoefficientSequence):
            return self._combine(CoefficientSequence((), PolyRat.coerce(other)), lambda x, y: x * y)
        return self._combine(other, lambda x, y: x * y)

    def __truediv__(self, other):
        return self._combine(other, lambda x, y: x / y)

    def reciprocal(self) -> "CoefficientSequence":
        head = [1 / x for x in self.head]
        if self.branches is None:
            return CoefficientSequence(head, None)
        return CoefficientSequence(head, tuple(b.reciprocal() for b in self.branches))

    def shifted(self) -> "CoefficientSequence":
        """The sequence n -> self(n - 1) for n >= 2 (index 1 is undefined).

        Only the tail is meaningful; callers supply their own head.
        """
        if self.branches is None:
            return CoefficientSequence((), None)
        p = self.period
        return CoefficientSequence(
            (), tuple(self.branches[(j - 1) % p].shift(-1) for j in range(p))
        )

    def __repr__(self):
        head = "[" + ", ".join(map(str, self.head)) + "]"
        if self.branches is None:
            tail = "None"
        elif len(self.branches) == 1:
            tail = str(self.branches[0])
        else:
            tail = "[" + "; ".join(map(str, self.branches)) + "]"
        return f"CoefficientSequence(head={head}, tail={tail})"

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"head": [format_rational(x) for x in self.head]}
        if self.branches is not None:
            start = self.head_length + 1
            if len(self.branches) == 1:
                t = self.branches[0]
                d["tail"] = {"num": [format_rational(c) for c in t.num],
                             "den": [format_rational(c) for c in t.den],
                             "start": start}
            else:
                d["tail"] = {"branches": [{"num": [format_rational(c) for c in t.num],
                                           "den": [format_rational(c) for c in t.den]}
                                          for t in self.branches],
                             "start": start}
        return d

    @classmethod
    def from_dict(cls, d) -> "CoefficientSequence":
        try:
            head = [parse_rational(x) for x in d.get("head", [])]
            t = d.get("tail")
            if t is None:
                return cls(head, None)
            start = t.get("start", len(head) + 1)
            if start != len(head) + 1:
                raise SpecFormatError(
                    f"tail start {start} must follow the head (expected {len(head) + 1})")
            raw = t["branches"] if "branches" in t else [t]
            branches = tuple(
                PolyRat([parse_rational(c) for c in b["num"]],
                        [parse_rational(c) for c in b.get("den", ["1"])])
                for b in raw)
            return cls(head, branches)
        except SpecFormatError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError) as exc:
            raise SpecFormatError(f"malformed coefficient sequence: {exc}") from exc


def seq_eval(s: CoefficientSequence, n: int) -> Fraction:
    if n < 1:
        raise ValueError("sequence indices start at 1")
    if n <= s.head_length:
        return s.head[n - 1]
    return s.branch_at(n)(n)


@dataclass(frozen=True)
class CFSpec:
    b0: Fraction
    a: CoefficientSequence
    b: CoefficientSequence
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "b0", Fraction(self.b0))

    def to_dict(self) -> dict:
        d = {"b0": format_rational(self.b0), "a": self.a.to_dict(), "b": self.b.to_dict()}
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, d) -> "CFSpec":
        if not isinstance(d, dict) or "a" not in d or "b" not in d:
            raise SpecFormatError("CF spec needs 'a' and 'b' sequences")
        try:
            b0 = parse_rational(d.get("b0", "0"))
        except ValueError as exc:
            raise SpecFormatError(str(exc)) from exc
        return cls(b0, CoefficientSequence.from_dict(d["a"]),
                   CoefficientSequence.from_dict(d["b"]), d.get("name"))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CFSpec":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON: {exc}") from exc


def load_spec(path) -> CFSpec:
    with open(path, encoding="utf-8") as fh:
        return CFSpec.loads(fh.read())


def save_spec(cf: CFSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cf.dumps())


@dataclass(frozen=True)
class ConvergentTrace:
    depth: int
    A: tuple  # A[0] is A_0; A_{-1} = 1 is implicit
    B: tuple
    values: tuple  # values[k] = A_k / B_k or None, k = 0..depth

    def value(self, n: int):
        return self.values[n]


def iter_convergents(cf: CFSpec) -> Iterator[tuple]:
    """Yield (n, A_n, B_n) for n = 1, 2, ... without bound."""
    a_prev, a_cur = Fraction(1), cf.b0
    b_prev, b_cur = Fraction(0), Fraction(1)
    n = 0
    while True:
        n += 1
        an, bn = seq_eval(cf.a, n), seq_eval(cf.b, n)
        a_prev, a_cur = a_cur, bn * a_cur + an * a_prev
        b_prev, b_cur = b_cur, bn * b_cur + an * b_prev
        yield n, a_cur, b_cur


def convergents(cf: CFSpec, depth: int) -> ConvergentTrace:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    A, B = [cf.b0], [Fraction(1)]
    for n, an, bn in iter_convergents(cf):
        A.append(an)
        B.append(bn)
        if n == depth:
            break
    values = tuple(x / y if y != 0 else None for x, y in zip(A, B))
    return ConvergentTrace(depth, tuple(A), tuple(B), values)


def convergent(cf: CFSpec, depth: int, reduce_every: Optional[int] = None) -> Fraction:
    """The convergent f_depth, i.e. the truncation containing a_1..a_depth.

    ``reduce_every=k`` runs the recurrence on integer pairs and only clears
    common factors every k steps; the result is identical.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if reduce_every is not None:
        return _convergent_projective(cf, depth, reduce_every)
    for n, an, bn in iter_convergents(cf):
        if n == depth:
            if bn == 0:
                raise UndefinedConvergentError(depth)
            return an / bn
    raise AssertionError("unreachable")


def _convergent_projective(cf: CFSpec, depth: int, k: int) -> Fraction:
    # (P, Q) are integer multiples of (A, B) sharing one scale per step.
    if k < 1:
        raise ValueError("reduce_every must be >= 1")
    b0 = cf.b0
    p_prev, p_cur = b0.denominator, b0.numerator
    q_prev, q_cur = 0, b0.denominator
    for n in range(1, depth + 1):
        an, bn = seq_eval(cf.a, n), seq_eval(cf.b, n)
        # scale step n by lcm of denominators so it stays integral
        sa, sb = an.denominator, bn.denominator
        m = sa * sb // math.gcd(sa, sb)
        ib, ia = int(bn * m), int(an * m)
        p_prev, p_cur = p_cur * m, ib * p_cur + ia * p_prev
        q_prev, q_cur = q_cur * m, ib * q_cur + ia * q_prev
        if n % k == 0:
            g = math.gcd(math.gcd(p_prev, p_cur), math.gcd(q_prev, q_cur))
            if g > 1:
                p_prev, p_cur, q_prev, q_cur = p_prev // g, p_cur // g, q_prev // g, q_cur // g
    if q_cur == 0:
        raise UndefinedConvergentError(depth)
    return Fraction(p_cur, q_cur)


def _preset_conjecture() -> CFSpec:
    n = PolyRat.var()
    return CFSpec(0, CoefficientSequence([1], (n - 1) ** 2),
                  CoefficientSequence((), -(2 * n - 1)), "conjecture-pi4")


def _preset_euler() -> CFSpec:
    n = PolyRat.var()
    return CFSpec(0, CoefficientSequence([1], (2 * n - 3) ** 2),
                  CoefficientSequence([1], PolyRat.const(2)), "euler-pi4")


def _preset_gauss() -> CFSpec:
    n = PolyRat.var()
    return CFSpec(0, CoefficientSequence([-1], (n - 1) ** 2 / ((2 * n - 3) * (2 * n - 1))),
                  CoefficientSequence.constant(1), "gauss-pi4")


PRESETS = {
    "conjecture-pi4": _preset_conjecture,
    "euler-pi4": _preset_euler,
    "gauss-pi4": _preset_gauss,
}


def preset(name: str) -> CFSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}") from None
