"""Shared oracle helpers.

All high-precision reference values are computed inside ``mp.workprec``
blocks so the global mpmath precision is never touched.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from mpmath import mp

ORACLE_BITS = 200
WIDE_ORACLE_BITS = 600


def to_fraction(v) -> Fraction:
    """Exact rational value of an int, float, Fraction or mpf."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, float)):
        return Fraction(v)
    sign, man, exp, _ = v._mpf_
    q = Fraction(man) * Fraction(2) ** exp
    return -q if sign else q


def mpf_exact(v):
    """An mpf equal to ``v`` (call inside a workprec block wide enough)."""
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


def oracle(fn, *args, bits: int = ORACLE_BITS):
    with mp.workprec(bits):
        return fn(*[mpf_exact(a) for a in args])


def encloses(iv, value) -> bool:
    lo, hi = iv.fractions()
    return lo <= to_fraction(value) <= hi


def sample_in(rng: random.Random, lo: float, hi: float) -> float:
    u = rng.random()
    if u < 0.05:
        return lo
    if u > 0.95:
        return hi
    return min(hi, max(lo, lo + (hi - lo) * rng.random()))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
