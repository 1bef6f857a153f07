import random
from fractions import Fraction

import pytest

from cfverify.cf_core import CFSpec, CoefficientSequence
from cfverify.polyrat import PolyRat

# pi to 50 decimal places, as published
PI_50 = "3.14159265358979323846264338327950288419716939937510"


def finite_cf_value(b0, a, b):
    """Evaluate b0 + a1/(b1 + a2/(... + an/bn)) bottom-up.

    Independent of the forward three-term recurrence; returns None when a
    division by zero occurs along the way.
    """
    tail = Fraction(0)
    for an, bn in zip(reversed(a), reversed(b)):
        denom = bn + tail
        if denom == 0:
            return None
        tail = an / denom
    return b0 + tail


def random_poly(rng, max_deg=2, lo=-5, hi=5):
    return PolyRat([rng.randint(lo, hi) for _ in range(rng.randint(0, max_deg) + 1)])


def random_positive_den(rng):
    # denominators with no positive integer roots
    k = rng.randint(0, 4)
    return rng.choice([PolyRat([k, 1]), PolyRat([k + 1, 0, 1]), PolyRat([1])])


def random_sequence(rng, nonzero_head=False):
    head = []
    for _ in range(rng.randint(0, 3)):
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if nonzero_head and v == 0:
            v = Fraction(1)
        head.append(v)
    tail = random_poly(rng) / random_positive_den(rng)
    return CoefficientSequence(head, tail)


def random_cf(rng) -> CFSpec:
    b0 = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return CFSpec(b0, random_sequence(rng), random_sequence(rng))


def random_scaling(rng, upto=50):
    """A nonzero scaling: random explicit head, then a root-free tail."""
    if rng.random() < 0.5:
        head = []
        for _ in range(upto):
            v = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            head.append(v if rng.random() < 0.5 else -v)
        return CoefficientSequence(head, PolyRat.const(rng.choice([1, -2, Fraction(3, 5)])))
    c = Fraction(rng.choice([-3, -1, 1, 2]), rng.randint(1, 3))
    k = rng.randint(0, 5)
    tail = rng.choice([PolyRat([k, 1]) * c, PolyRat([k + 1, 0, 1]) * c,
                       PolyRat.const(c), c / PolyRat([k, 1]), PolyRat([-1, 2]) * c])
    head = [Fraction(rng.randint(1, 5)) for _ in range(rng.randint(0, 2))]
    return CoefficientSequence(head, tail)


@pytest.fixture
def rng():
    return random.Random(20261016)


# --- acceptance criterion reporting ---------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _criterion_of.get(report.nodeid)
    if marker is not None:
        _criteria[marker] = report.outcome


_criterion_of = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criterion_of[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, text), outcome in sorted(_criteria.items()):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  criterion {num:>2}: {text}")
