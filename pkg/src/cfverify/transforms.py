"""Equivalence transformations of continued fractions.

Scaling by a nonzero sequence r_n maps

    a_1 -> r_1 a_1,   a_n -> r_n r_{n-1} a_n  (n >= 2),   b_n -> r_n b_n

and leaves every convergent unchanged.  Closed-form tails are multiplied
symbolically, so cancellations between r_n r_{n-1} and a_n happen in the
rational-function field rather than numerically.
"""

from __future__ import annotations

from .cf_core import CFSpec, CoefficientSequence, seq_eval
from .errors import SequenceExhaustedError, TailPoleError, ZeroScalingError
from .polyrat import PolyRat


class ScalingSequence(CoefficientSequence):
    """A coefficient sequence whose values must never be zero."""

    @classmethod
    def of(cls, seq: CoefficientSequence) -> "ScalingSequence":
        return cls(seq.head, seq.branches)

    def __call__(self, n):
        v = seq_eval(self, n)
        if v == 0:
            raise ZeroScalingError(n)
        return v


def _first_bad_index(seq: CoefficientSequence, start: int = 1):
    """Smallest n >= start where seq is zero (or has a pole), else None."""
    for n, v in enumerate(seq.head, 1):
        if n >= start and v == 0:
            return n, ZeroScalingError(n)
    if seq.branches is None:
        return None
    p = seq.period
    t0 = max(start, seq.head_length + 1)
    found = []
    for j, br in enumerate(seq.branches):
        if br.is_zero():
            n = t0 + ((j - t0) % p)
            found.append((n, ZeroScalingError(n)))
            continue
        for z in br.zeros():
            if z >= t0 and z % p == j:
                found.append((z, ZeroScalingError(z)))
        for pole in br.poles():
            if pole >= t0 and pole % p == j:
                found.append((pole, TailPoleError(pole)))
    return min(found, key=lambda t: t[0]) if found else None


def check_scaling(r: CoefficientSequence, upto=None) -> None:
    """Raise ZeroScalingError / TailPoleError for the first bad index."""
    bad = _first_bad_index(r)
    if bad is not None and (upto is None or bad[0] <= upto):
        raise bad[1]


def as_scaling(r) -> ScalingSequence:
    if isinstance(r, ScalingSequence):
        return r
    if isinstance(r, CoefficientSequence):
        return ScalingSequence.of(r)
    return ScalingSequence((), PolyRat.coerce(r))


def apply_equivalence(cf: CFSpec, r) -> CFSpec:
    r = as_scaling(r)
    check_scaling(r)
    # b~_n = r_n b_n
    b_new = r * cf.b
    # a~_n needs r_{n-1}, so its head must cover index 1 and r's head + 1
    h = max(cf.a.head_length, r.head_length + 1)
    head = [r(1) * seq_eval(cf.a, 1)]
    head += [r(n) * r(n - 1) * seq_eval(cf.a, n) for n in range(2, h + 1)]
    if cf.a.branches is None or r.branches is None:
        a_new = CoefficientSequence(head, None)
    else:
        tail_seq = CoefficientSequence((), r.branches) * r.shifted() * CoefficientSequence((), cf.a.branches)
        a_new = CoefficientSequence(head, tail_seq.branches)
    return CFSpec(cf.b0, a_new, b_new)


def compose_scalings(r, s) -> ScalingSequence:
    """Scaling equivalent to applying r then s."""
    return ScalingSequence.of(as_scaling(r) * as_scaling(s))


def inverse_scaling(r) -> ScalingSequence:
    r = as_scaling(r)
    check_scaling(r)
    return ScalingSequence.of(r.reciprocal())


def scaling_to_match_denominators(cf: CFSpec, target_b) -> ScalingSequence:
    """The scaling r_n = target_b(n) / b_n."""
    if not isinstance(target_b, CoefficientSequence):
        target_b = CoefficientSequence((), PolyRat.coerce(target_b))
    bad = _first_bad_index(cf.b)
    if bad is not None:
        n, exc = bad
        if isinstance(exc, ZeroScalingError):
            raise ZeroScalingError(n)
        raise exc
    h = max(cf.b.head_length, target_b.head_length)
    head = []
    for n in range(1, h + 1):
        t = seq_eval(target_b, n)
        if t == 0:
            raise ZeroScalingError(n)
        head.append(t / seq_eval(cf.b, n))
    if cf.b.branches is None or target_b.branches is None:
        r = ScalingSequence(head, None)
    else:
        ratio = CoefficientSequence((), target_b.branches) / CoefficientSequence((), cf.b.branches)
        r = ScalingSequence(head, ratio.branches)
    check_scaling(r)
    return r


def coefficient_table(cf: CFSpec, upto: int = 5) -> list:
    """Rows (n, a_n, b_n) for n = 1..upto; missing values become None."""
    rows = []
    for n in range(1, upto + 1):
        vals = []
        for s in (cf.a, cf.b):
            try:
                vals.append(seq_eval(s, n))
            except (TailPoleError, SequenceExhaustedError):
                vals.append(None)
        rows.append((n, *vals))
    return rows


__all__ = [
    "ScalingSequence",
    "apply_equivalence",
    "as_scaling",
    "check_scaling",
    "coefficient_table",
    "compose_scalings",
    "inverse_scaling",
    "scaling_to_match_denominators",
]
