from __future__ import annotations

import math
import pickle
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from fraclap_proof.interval import (
    MACHINE,
    DivisionByZeroInterval,
    DomainError,
    DualInterval,
    EmptyIntersection,
    Interval,
    IntervalOverflow,
    InvalidInterval,
    PrecisionMode,
    arith,
    contains,
    dual_arith,
    elementary,
    pi,
    split,
    width,
)

from conftest import encloses, oracle, sample_in, to_fraction

N_SAMPLES = 10_000
EXT128 = PrecisionMode.extended(128)
EXT256 = PrecisionMode.extended(256)


def _rand_interval(rng: random.Random, lo_exp=-8, hi_exp=8, positive=False) -> tuple[float, float]:
    scale = 2.0 ** rng.randint(lo_exp, hi_exp)
    a = rng.uniform(0 if positive else -1, 1) * scale
    b = a + rng.random() * scale * rng.choice((0.0, 1e-9, 1e-3, 1.0))
    if positive and a <= 0:
        a = scale * 1e-3
        b = max(b, a)
    return a, b


def _cbrt(x):
    return mp.sign(x) * mp.cbrt(abs(x))


# name -> (interval op, oracle on a point, interval generator)
UNARY = {
    "neg": (lambda x: -x, lambda v: -v, lambda r: _rand_interval(r)),
    "abs": (lambda x: x.abs(), lambda v: abs(v), lambda r: _rand_interval(r)),
    "sqrt": (lambda x: x.sqrt(), mp.sqrt, lambda r: _rand_interval(r, positive=True)),
    "cbrt": (lambda x: x.cbrt(), _cbrt, lambda r: _rand_interval(r)),
    "log": (lambda x: x.log(), mp.log, lambda r: _rand_interval(r, positive=True)),
    "exp": (lambda x: x.exp(), mp.exp, lambda r: _rand_interval(r, -6, 5)),
    "pow3": (lambda x: x.pow_int(3), lambda v: v**3, lambda r: _rand_interval(r)),
    "pow4": (lambda x: x.pow_int(4), lambda v: v**4, lambda r: _rand_interval(r)),
    "pow-2": (lambda x: x.pow_int(-2), lambda v: v**-2, lambda r: _rand_interval(r, positive=True)),
}

BINARY = {
    "add": (lambda x, y: x + y, lambda u, v: u + v),
    "sub": (lambda x, y: x - y, lambda u, v: u - v),
    "mul": (lambda x, y: x * y, lambda u, v: u * v),
    "div": (lambda x, y: x / y, lambda u, v: u / v),
}


def _nonzero_interval(rng: random.Random) -> tuple[float, float]:
    a, b = _rand_interval(rng, positive=True)
    return (-b, -a) if rng.random() < 0.5 else (a, b)


# ---------------------------------------------------------------------------
# containment against a 200-bit oracle, 10^4 samples per operation


@pytest.mark.parametrize("name", sorted(UNARY))
def test_unary_containment_machine(name, rng):
    op, ref, gen = UNARY[name]
    for _ in range(N_SAMPLES):
        a, b = gen(rng)
        iv = op(Interval(a, b))
        p = sample_in(rng, a, b)
        assert encloses(iv, oracle(ref, p)), (name, a, b, p, iv)


@pytest.mark.parametrize("name", sorted(BINARY))
def test_binary_containment_machine(name, rng):
    op, ref = BINARY[name]
    for _ in range(N_SAMPLES):
        a, b = _rand_interval(rng)
        c, d = _nonzero_interval(rng) if name == "div" else _rand_interval(rng)
        iv = op(Interval(a, b), Interval(c, d))
        p, q = sample_in(rng, a, b), sample_in(rng, c, d)
        assert encloses(iv, oracle(ref, p, q)), (name, a, b, c, d, p, q, iv)


@pytest.mark.parametrize("mode", [EXT128, EXT256], ids=str)
@pytest.mark.parametrize("name", sorted(UNARY))
def test_unary_containment_extended(name, mode, rng):
    op, ref, gen = UNARY[name]
    for _ in range(500):
        a, b = gen(rng)
        lo, hi = Fraction(a) + Fraction(1, 3**50), Fraction(b) + Fraction(1, 3**50)
        if name in ("sqrt", "log", "pow-2") and lo <= 0:
            continue
        iv = op(Interval(lo, hi, mode))
        assert iv.mode == mode
        for p in (lo, hi, (lo + hi) / 2):
            assert encloses(iv, oracle(ref, p, bits=600)), (name, lo, hi, p)


@pytest.mark.parametrize("mode", [EXT128, EXT256], ids=str)
@pytest.mark.parametrize("name", sorted(BINARY))
def test_binary_containment_extended(name, mode, rng):
    op, ref = BINARY[name]
    third = Fraction(1, 3**60)
    for _ in range(500):
        a, b = _rand_interval(rng)
        c, d = _nonzero_interval(rng) if name == "div" else _rand_interval(rng)
        x = Interval(Fraction(a) - third, Fraction(b) + third, mode)
        y = Interval(Fraction(c) + third, Fraction(d) + third, mode)
        iv = op(x, y)
        for p in x.fractions():
            for q in y.fractions():
                assert encloses(iv, oracle(ref, p, q, bits=600))


def test_extended_negation_keeps_full_precision():
    # negating must not round the endpoints to binary64
    x = Interval(Fraction(1, 3), Fraction(1, 3), EXT256)
    y = -x
    assert y.fractions() == (-x.fractions()[1], -x.fractions()[0])
    assert float(width(y)) < 1e-70
    assert float(width(x.abs())) < 1e-70
    assert float(width((-x).abs())) < 1e-70
    assert encloses(y.cbrt(), oracle(lambda v: -mp.cbrt(v), Fraction(1, 3), bits=600))
    assert float(width(y.cbrt())) < 1e-70


@pytest.mark.parametrize("mode", [EXT128, EXT256], ids=str)
def test_extended_compound_expression(mode, rng):
    # a polynomial-with-negation chain is where lost precision shows up first
    for _ in range(200):
        t = Fraction(rng.randint(1, 10**12), 10**12) * 2
        x = Interval(t, t, mode)
        iv = -(x * x * 3 - x * 64 - 168) / (-(x + 7) * 120) - (x - 1).abs()
        exact = -(3 * t * t - 64 * t - 168) / (-(t + 7) * 120) - abs(t - 1)
        assert encloses(iv, exact)
        assert abs(float(width(iv))) < 2.0 ** (-mode.bits + 12)


# ---------------------------------------------------------------------------
# width control for point inputs


def test_point_width_within_four_ulps(rng):
    for _ in range(2000):
        a = rng.uniform(0.01, 100.0)
        b = rng.uniform(0.01, 100.0)
        cases = [
            (Interval(a) + Interval(b), oracle(lambda u, v: u + v, a, b)),
            (Interval(a) * Interval(b), oracle(lambda u, v: u * v, a, b)),
            (Interval(a) / Interval(b), oracle(lambda u, v: u / v, a, b)),
            (Interval(a).sqrt(), oracle(mp.sqrt, a)),
            (Interval(a).cbrt(), oracle(mp.cbrt, a)),
            (Interval(a).log(), oracle(mp.log, a)),
            (Interval(a / 10).exp(), oracle(mp.exp, a / 10)),
        ]
        for iv, exact in cases:
            ulp = math.ulp(float(exact))
            assert iv.hi - iv.lo <= 4 * ulp


# ---------------------------------------------------------------------------
# inclusion monotonicity (property based)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)
grow = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)


def _outer(iv: Interval, dl: float, dh: float) -> Interval:
    return Interval(iv.lo - dl, iv.hi + dh)


@settings(max_examples=300, deadline=None)
@given(finite, finite, finite, finite, grow, grow, grow, grow, st.sampled_from(["add", "sub", "mul"]))
def test_inclusion_monotone_binary(a, b, c, d, g1, g2, g3, g4, op):
    x = Interval(min(a, b), max(a, b))
    y = Interval(min(c, d), max(c, d))
    inner = arith(op, x, y)
    outer = arith(op, _outer(x, g1, g2), _outer(y, g3, g4))
    assert outer.contains(inner)


@settings(max_examples=300, deadline=None)
@given(positive, positive, positive, positive, grow, grow)
def test_inclusion_monotone_div(a, b, c, d, g1, g2):
    x = Interval(min(a, b), max(a, b))
    y = Interval(min(c, d), max(c, d))
    outer_y = Interval(y.lo / 2, y.hi + g2)
    assert (_outer(x, g1, g1) / outer_y).contains(x / y)


@settings(max_examples=300, deadline=None)
@given(positive, positive, st.floats(min_value=0, max_value=0.5), grow, st.sampled_from(["sqrt", "cbrt", "log"]))
def test_inclusion_monotone_unary(a, b, shrink, g, fn):
    x = Interval(min(a, b), max(a, b))
    outer = Interval(x.lo * (1 - shrink), x.hi + g)
    assert elementary(fn, outer).contains(elementary(fn, x))


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=10**6), st.fractions(min_value=0, max_value=5, max_denominator=10**6))
def test_construction_from_exact_values_is_outward(q, w):
    iv = Interval(q, q + w)
    assert iv.contains(q) and iv.contains(q + w)
    ev = Interval(q, q + w, EXT128)
    assert ev.contains(q) and ev.contains(q + w)


# ---------------------------------------------------------------------------
# examples and accessors


def test_arith_examples():
    assert arith("add", Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert arith("mul", Interval(-1, 2), Interval(3, 4)) == Interval(-4, 8)
    with pytest.raises(DivisionByZeroInterval):
        arith("div", Interval(1, 2), Interval(-1, 1))
    with pytest.raises(ValueError):
        arith("pow", Interval(1, 2), Interval(1, 2))


def test_elementary_examples():
    assert elementary("sqrt", Interval(4, 9)) == Interval(2, 3)
    assert elementary("cbrt", Interval(8, 27)) == Interval(2, 3)
    e = Interval(1).exp()
    ln = elementary("ln", Interval(1, e.hi))
    assert ln.contains(0) and ln.contains(1)
    assert ln.lo == 0.0 and ln.hi - 1 < 1e-15
    assert elementary("pow_int", Interval(-2, 3), 2) == Interval(0, 9)
    assert Interval(-2, 3).pow_int(0) == Interval(1, 1)


def test_exact_results_are_tight():
    assert Interval(4, 4).sqrt().is_point
    assert Interval(-8, -8).cbrt() == Interval(-2, -2)
    assert Interval(0, 0).exp() == Interval(1, 1)
    assert Interval(1, 1).log() == Interval(0, 0)
    assert Interval(3, 5).pow_int(-1).contains(Fraction(1, 3))
    assert Interval(Fraction(1, 2), 4, EXT128).sqrt().contains(2)


def test_split_width_midpoint_contains():
    left, right = split(Interval(0, 2))
    assert left == Interval(0, 1) and right == Interval(1, 2)
    assert width(Interval(1, 4)) == 3
    assert contains(Interval(0, 1), 0.5)
    assert not contains(Interval(0, 1), 1.5)
    assert Interval(0, 1).contains(Fraction(1, 2))
    assert Interval(0, 1, EXT128).contains(0.5)
    assert Interval(-3, 2).mag() == 3
    a, b = Interval(1, 3, EXT256).split()
    assert a.hi == b.lo and a.mode == EXT256


@given(finite, finite)
def test_split_covers(a, b):
    iv = Interval(min(a, b), max(a, b))
    left, right = iv.split()
    assert left.lo == iv.lo and right.hi == iv.hi and left.hi == right.lo
    assert iv.lo <= left.hi <= iv.hi


def test_cbrt_across_zero():
    iv = Interval(-1, 2).cbrt()
    assert iv.lo == -1.0 and iv.contains(2 ** (1 / 3))


def test_intersect_hull():
    a, b = Interval(0, 2), Interval(1, 3)
    assert a.intersect(b) == Interval(1, 2)
    assert a.hull(b) == Interval(0, 3)
    with pytest.raises(EmptyIntersection):
        Interval(0, 1).intersect(Interval(2, 3))


def test_mixed_modes_promote_to_extended():
    r = Interval(1, 2) + Interval(1, 2, EXT128)
    assert r.mode == EXT128
    r = Interval(1, 2, EXT128) * Interval(1, 2, EXT256)
    assert r.mode == EXT256


def test_pi_encloses():
    for mode in (MACHINE, EXT128, EXT256):
        assert encloses(pi(mode), oracle(lambda: +mp.pi, bits=600))


def test_immutability_and_pickle():
    iv = Interval(1, 2, EXT128)
    with pytest.raises(AttributeError):
        iv.lo = 0
    back = pickle.loads(pickle.dumps(iv))
    assert back == iv and back.mode == EXT128


# ---------------------------------------------------------------------------
# errors


def test_invalid_and_nonfinite():
    with pytest.raises(InvalidInterval):
        Interval(2, 1)
    with pytest.raises(IntervalOverflow):
        Interval(float("nan"))
    with pytest.raises(IntervalOverflow):
        Interval(0, float("inf"))
    with pytest.raises(IntervalOverflow):
        Interval(710).exp()
    with pytest.raises(IntervalOverflow):
        Interval(1e300) * Interval(1e300)


def test_domain_errors():
    with pytest.raises(DomainError):
        Interval(-1, 1).sqrt()
    with pytest.raises(DomainError):
        Interval(0, 1).log()
    with pytest.raises(DomainError):
        Interval(-1, 1).pow_int(-1)
    with pytest.raises(DivisionByZeroInterval):
        Interval(1) / Interval(0, 1)
    assert Interval(0, 4).sqrt() == Interval(0, 2)


def test_precision_mode():
    assert PrecisionMode() == MACHINE and MACHINE.bits == 53
    assert PrecisionMode("machine", 99).bits == 53
    assert PrecisionMode.parse("extended(192)") == PrecisionMode.extended(192)
    assert PrecisionMode.parse(str(EXT128)) == EXT128
    with pytest.raises(ValueError):
        PrecisionMode.extended(32)
    with pytest.raises(ValueError):
        PrecisionMode("quad")
    with pytest.raises(ValueError):
        PrecisionMode.parse("double")


def test_extended_is_tighter_than_machine():
    x = Fraction(1, 7)
    for fn in ("sqrt", "log", "exp", "cbrt"):
        wm = float(width(elementary(fn, Interval(x))))
        we = float(width(elementary(fn, Interval(x, x, EXT128))))
        assert we < wm * 1e-20


# ---------------------------------------------------------------------------
# dual intervals


def test_dual_examples():
    one = DualInterval(Interval(1), Interval(1))
    sq = one * one
    assert sq.val == Interval(1) and sq.der == Interval(2)
    assert one.pow_int(2).der == Interval(2)
    ln = DualInterval(Interval(2), Interval(1)).log()
    assert ln.der.contains(0.5)
    prod = dual_arith("mul", DualInterval(Interval(2), Interval(1)), DualInterval(Interval(3), Interval(1)))
    assert prod.der.contains(5)
    c = DualInterval.constant(Interval(6))
    assert c.der == Interval(0, 0)
    assert (c * c).der == Interval(0, 0)
    with pytest.raises(DivisionByZeroInterval):
        dual_arith("div", one, DualInterval.constant(Interval(-1, 1)))


def _dual_fns():
    # (dual function, mpmath point function, domain)
    return [
        (lambda d: d.pow_int(3) * d.exp() / (d * d + 1), lambda t: t**3 * mp.exp(t) / (t * t + 1), (-2.0, 2.0)),
        (lambda d: d.log() * d.sqrt() - 3 / d, lambda t: mp.log(t) * mp.sqrt(t) - 3 / t, (0.2, 5.0)),
        (lambda d: (d.cbrt() + 2) / (d - 10), lambda t: (mp.cbrt(t) + 2) / (t - 10), (0.5, 4.0)),
        (lambda d: -(d.pow_int(-2)) + d.sqr() - d, lambda t: -(t**-2) + t * t - t, (0.3, 3.0)),
    ]


@pytest.mark.parametrize("mode", [MACHINE, EXT128], ids=str)
def test_dual_matches_finite_differences(mode, rng):
    for fd, fm, (lo, hi) in _dual_fns():
        for _ in range(200):
            t = Fraction(sample_in(rng, lo, hi))
            w = Fraction(rng.random() * 1e-3)
            d = fd(DualInterval.variable(Interval(t, t + w, mode)))
            for h in (Fraction(1, 10**6), Fraction(1, 10**7)):
                with mp.workprec(200):
                    c = (fm(_m(t + h)) - fm(_m(t - h))) / (2 * _m(h))
                    cf = to_fraction(c)
                lo_d, hi_d = d.der.fractions()
                assert lo_d - Fraction(1, 10**4) <= cf <= hi_d + Fraction(1, 10**4)
            assert encloses(d.val, oracle(fm, t, bits=200))


def _m(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def test_dual_der_contains_exact_derivative(rng):
    # d/dt [t^2 sqrt(t)] = 2.5 t^1.5 on sampled subintervals
    for _ in range(1000):
        a = rng.uniform(0.1, 5)
        b = a + rng.random() * 0.1
        d = DualInterval.variable(Interval(a, b))
        r = d.sqr() * d.sqrt()
        p = sample_in(rng, a, b)
        assert encloses(r.der, oracle(lambda t: mp.mpf(5) / 2 * t ** mp.mpf(1.5), p))
