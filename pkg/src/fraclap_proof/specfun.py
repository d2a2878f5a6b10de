"""Rigorous enclosures of ln Gamma, Gamma, digamma and trigamma for x > 0.

Point arguments are shifted above a threshold with the functional
recurrences and then evaluated by the asymptotic (Stirling-type) series,
whose remainder for real positive arguments is bounded by the first omitted
term.  Wide arguments are handled through monotonicity: digamma increases,
trigamma decreases, and ln Gamma is convex with its minimum near 1.4616, so
only the two endpoints need point evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .interval import DomainError, DualInterval, Interval, PrecisionMode, kernel_for, pi

__all__ = [
    "BERNOULLI",
    "SpecialFunctionConfig",
    "DEFAULT_CONFIG",
    "bernoulli_even",
    "lngamma",
    "gamma",
    "digamma",
    "trigamma",
    "lngamma_dual",
    "gamma_dual",
    "digamma_dual",
]

# B_2, B_4, ..., B_20
BERNOULLI: tuple[Fraction, ...] = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)

# ln Gamma attains its minimum at x0 = 1.46163214496836234126...,
# with value -0.12148629053584960809...
_ARGMIN_LO = Fraction(14616321, 10**7)
_ARGMIN_HI = Fraction(14616322, 10**7)
_LNGAMMA_MIN_LOWER = Fraction(-1214863, 10**7)


@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """Exact B_2, B_4, ..., B_{2*count} from the binomial recurrence."""
    n_max = 2 * count
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        c = 1  # C(n+1, k)
        for k in range(n):
            acc += c * b[k]
            c = c * (n + 1 - k) // (k + 1)
        b.append(-acc / (n + 1))
    return tuple(b[2 * j] for j in range(1, count + 1))


@dataclass(frozen=True)
class SpecialFunctionConfig:
    """Series parameters for machine-mode evaluation.

    Extended modes raise the shift threshold and the number of series terms
    automatically so that truncation stays below the working precision.
    """

    bernoulli: tuple[Fraction, ...] = field(default=BERNOULLI)
    stirling_order: int = 8
    shift_threshold: int = 10
    trigamma_terms: int = 64

    def __post_init__(self) -> None:
        b = tuple(Fraction(v) for v in self.bernoulli)
        object.__setattr__(self, "bernoulli", b)
        if len(b) < 2 or b[0] != Fraction(1, 6) or b[1] != Fraction(-1, 30):
            raise ValueError("Bernoulli table must start with B2=1/6, B4=-1/30")
        if b != bernoulli_even(len(b)):
            raise ValueError("Bernoulli table does not match the exact values")
        if self.stirling_order < 2:
            raise ValueError("stirling_order must be >= 2")
        if len(b) < self.stirling_order + 1:
            raise ValueError("Bernoulli table shorter than stirling_order + 1")
        if self.shift_threshold < 2:
            raise ValueError("shift_threshold must be >= 2")
        if self.trigamma_terms < 8:
            raise ValueError("trigamma_terms must be >= 8")


DEFAULT_CONFIG = SpecialFunctionConfig()


def _tail_bound(b: Fraction, k: int, x: int) -> float:
    # largest of the three series' first omitted terms at argument x
    a = abs(float(b))
    return a * max(1.0 / (k * (k - 1) * x ** (k - 1)), 1.0 / (k * x**k), 1.0 / x ** (k + 1))


@lru_cache(maxsize=None)
def _plan(cfg: SpecialFunctionConfig, bits: int) -> tuple[int, int, tuple[Fraction, ...]]:
    """(shift threshold, series order m, B_2..B_{2m+2}) for a precision."""
    if bits <= 53:
        m = cfg.stirling_order
        return cfg.shift_threshold, m, cfg.bernoulli[: m + 1]
    x = max(cfg.shift_threshold, bits // 6 + 1)
    target = 2.0 ** -(bits + 8)
    m = cfg.stirling_order
    while True:
        b = bernoulli_even(m + 1)
        if _tail_bound(b[m], 2 * m + 2, x) < target:
            return x, m, b
        m += 1
        if m > 4 * x:
            x += 4


def _shift(p: Interval, threshold: int) -> int:
    lo = p.fractions()[0]
    return max(0, math.ceil(threshold - lo))


def _point(x: Interval, which) -> Interval:
    return Interval._new(x._k, which, which)


def _sym(e, mode: PrecisionMode) -> Interval:
    k = kernel_for(mode)
    return Interval._new(k, k.neg(e), e)


@lru_cache(maxsize=None)
def _half_log_2pi(mode: PrecisionMode) -> Interval:
    return (2 * pi(mode)).log() / 2


def _lngamma_point(p: Interval, cfg: SpecialFunctionConfig) -> Interval:
    x0, m, b = _plan(cfg, p.mode.bits)
    n = _shift(p, x0)
    y = p + n
    inv = 1 / y
    inv2 = inv.sqr()
    term = inv
    series = _half_log_2pi(p.mode) + (y - Fraction(1, 2)) * y.log() - y
    for k in range(1, m + 1):
        series = series + b[k - 1] / ((2 * k) * (2 * k - 1)) * term
        term = term * inv2
    k = m + 1
    err = abs(b[m]) / ((2 * k) * (2 * k - 1)) * term
    series = series + _sym(err.hi, p.mode)
    if n == 0:
        return series
    prod = p
    for j in range(1, n):
        prod = prod * (p + j)
    return series - prod.log()


def _digamma_point(p: Interval, cfg: SpecialFunctionConfig) -> Interval:
    x0, m, b = _plan(cfg, p.mode.bits)
    n = _shift(p, x0)
    y = p + n
    inv = 1 / y
    inv2 = inv.sqr()
    term = inv2
    s = y.log() - inv / 2
    for k in range(1, m + 1):
        s = s - b[k - 1] / (2 * k) * term
        term = term * inv2
    err = abs(b[m]) / (2 * m + 2) * term
    s = s + _sym(err.hi, p.mode)
    for j in range(n):
        s = s - 1 / (p + j)
    return s


def _trigamma_point(p: Interval, cfg: SpecialFunctionConfig) -> Interval:
    x0, m, b = _plan(cfg, p.mode.bits)
    n = max(cfg.trigamma_terms, _shift(p, x0))
    partial = Interval(0, 0, p.mode)
    for j in range(n):
        partial = partial + 1 / (p + j).sqr()
    # tail sum_{k>=n} (p+k)^-2 equals trigamma(p+n)
    y = p + n
    inv = 1 / y
    inv2 = inv.sqr()
    term = inv * inv2
    tail = inv + inv2 / 2
    for k in range(1, m + 1):
        tail = tail + b[k - 1] * term
        term = term * inv2
    tail = tail + _sym((abs(b[m]) * term).hi, p.mode)
    integral = Interval(inv.lo, (1 / (y - 1)).hi, p.mode)
    return partial + tail.intersect(integral)


def _check_positive(x: Interval, name: str) -> None:
    if not x.lo > 0:
        raise DomainError(f"{name} needs a strictly positive argument, got {x!r}")


def lngamma(x, cfg: SpecialFunctionConfig = DEFAULT_CONFIG):
    """Enclosure of ln Gamma over ``x`` (Interval or DualInterval)."""
    if isinstance(x, DualInterval):
        return lngamma_dual(x, cfg)
    _check_positive(x, "lngamma")
    if x.is_point:
        return _lngamma_point(x, cfg)
    lo_v = _lngamma_point(_point(x, x.lo), cfg)
    hi_v = _lngamma_point(_point(x, x.hi), cfg)
    a, b = x.fractions()
    if a >= _ARGMIN_HI:
        return Interval._new(x._k, lo_v.lo, hi_v.hi)
    if b <= _ARGMIN_LO:
        return Interval._new(x._k, hi_v.lo, lo_v.hi)
    # convex with interior minimum: max at an endpoint, min bounded below
    floor = Interval(_LNGAMMA_MIN_LOWER, _LNGAMMA_MIN_LOWER, x.mode)
    return Interval._new(x._k, floor.lo, max(lo_v.hi, hi_v.hi))


def gamma(x, cfg: SpecialFunctionConfig = DEFAULT_CONFIG):
    """Enclosure of Gamma over ``x``, computed as exp(ln Gamma)."""
    if isinstance(x, DualInterval):
        return gamma_dual(x, cfg)
    return lngamma(x, cfg).exp()


def digamma(x, cfg: SpecialFunctionConfig = DEFAULT_CONFIG):
    """Enclosure of Psi = Gamma'/Gamma over ``x``."""
    if isinstance(x, DualInterval):
        return digamma_dual(x, cfg)
    _check_positive(x, "digamma")
    if x.is_point:
        return _digamma_point(x, cfg)
    lo_v = _digamma_point(_point(x, x.lo), cfg)
    hi_v = _digamma_point(_point(x, x.hi), cfg)
    return Interval._new(x._k, lo_v.lo, hi_v.hi)


def trigamma(x, cfg: SpecialFunctionConfig = DEFAULT_CONFIG):
    """Enclosure of Psi' over ``x`` from its defining series."""
    if isinstance(x, DualInterval):
        raise TypeError("trigamma has no dual variant (Psi'' is out of scope)")
    _check_positive(x, "trigamma")
    if x.is_point:
        return _trigamma_point(x, cfg)
    lo_v = _trigamma_point(_point(x, x.lo), cfg)
    hi_v = _trigamma_point(_point(x, x.hi), cfg)
    return Interval._new(x._k, hi_v.lo, lo_v.hi)


def lngamma_dual(x: DualInterval, cfg: SpecialFunctionConfig = DEFAULT_CONFIG) -> DualInterval:
    return DualInterval(lngamma(x.val, cfg), digamma(x.val, cfg) * x.der)


def gamma_dual(x: DualInterval, cfg: SpecialFunctionConfig = DEFAULT_CONFIG) -> DualInterval:
    g = gamma(x.val, cfg)
    return DualInterval(g, g * digamma(x.val, cfg) * x.der)


def digamma_dual(x: DualInterval, cfg: SpecialFunctionConfig = DEFAULT_CONFIG) -> DualInterval:
    return DualInterval(digamma(x.val, cfg), trigamma(x.val, cfg) * x.der)
