"""The named functions of the d = 3 antisymmetry argument, as enclosures on [0, 2].

Every function accepts an :class:`AlphaDomain`, an :class:`Interval`, an
exact rational point, or (where a derivative is wanted) a
:class:`DualInterval` seeded with ``DualInterval.variable``.  Ratios of Gamma
functions are evaluated as ``exp`` of a sum of ``lngamma`` enclosures, which
keeps the dependency problem in one place.

The exact rational pieces (a, b, the cubic and quartic of the T-bound
evaluations, the radicand Q and the curvature polynomials) live here as
:class:`IntPoly` / :class:`RationalFn` constants so that claims can check
them without any rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Union

from .exactpoly import X, IntPoly, RationalFn, RootBracket, identity_equal, refine, sturm_isolate
from .interval import (
    MACHINE,
    DualInterval,
    Interval,
    IntervalError,
    PrecisionMode,
)
from .specfun import digamma, lngamma, trigamma

__all__ = [
    "AlphaDomain",
    "NegativeDiscriminant",
    "NegativeRadicand",
    "InconsistentAlphaStar",
    "A_COEF",
    "B_COEF",
    "CUBIC",
    "QUARTIC",
    "RADICAND",
    "CURV_P",
    "CURV_P_PRINTED",
    "CURV_R",
    "CURV_K",
    "mu",
    "lambda_cap",
    "lambda_displayed",
    "t_cap",
    "a_coef",
    "b_coef",
    "g_quadratic",
    "discriminant",
    "f_cap",
    "f_cap_logderiv",
    "phi",
    "phi_prime",
    "f_small",
    "h_small",
    "h_literal",
    "fh_pair",
    "r_fn",
    "s_fn",
    "r_prime",
    "s_prime",
    "r_prime_constant",
    "rs_bundle",
    "fprime0",
    "f_prime",
    "h_prime",
    "x_fn",
    "h_curvature",
    "g_at_T",
    "alpha_star_closed_form",
    "alpha_star_bracket",
    "alpha_star",
    "h_exact_parts",
    "h_second_derivative_exact",
    "curvature_identity_holds",
]

DIMENSION = 3


class NegativeDiscriminant(IntervalError, ValueError):
    pass


class NegativeRadicand(IntervalError, ValueError):
    pass


class InconsistentAlphaStar(IntervalError):
    def __init__(self, closed_form: Interval, bracket: RootBracket):
        self.closed_form = closed_form
        self.bracket = bracket
        super().__init__(
            f"closed form {closed_form!r} misses the Sturm bracket [{bracket.lo}, {bracket.hi}]"
        )


# ---------------------------------------------------------------------------
# Exact rational data
# ---------------------------------------------------------------------------

# a(α) = (14-3α)(3+α) / (1200(7+α)),  b(α) = -(-α³+3α²+64α+168) / (120(7+α))
A_COEF = RationalFn((14 - 3 * X) * (3 + X), 1200 * (7 + X))
B_COEF = RationalFn(-IntPoly((168, 64, 3, -1)), 120 * (7 + X))

CUBIC = IntPoly((-26568, -6300, 237, 95))
QUARTIC = IntPoly((-13608, 32472, 36800, 10367, 893))
RADICAND = IntPoly((2944, 1104, 25, -6, 1))

# h'' = -20 A / B with A = x P + R and B = K Q sqrt(Q); coefficients ascending.
CURV_P = IntPoly((
    1171994600448, 1458665131392, 1071472458168, 576435831104, 202807642502,
    42711607466, 5168851898, 367617434, 22832627, 2306391, 215061, 9861,
))
# As typeset; two coefficients (α^9, α^10) lost a trailing digit.
CURV_P_PRINTED = IntPoly((
    1171994600448, 1458665131392, 1071472458168, 576435831104, 202807642502,
    42711607466, 5168851898, 367617434, 22832627, 230639, 21506, 9861,
))
CURV_R = IntPoly((
    -8833393336320, 1154602149120, 9813287816640, 6179874342344, 1699521987312,
    263084581722, 33568792782, 4000462638, 210630942, 10907731, 4246101, 234441, -9861,
))
CURV_K = (90 + 19 * X) ** 3 * (3 + X) ** 3 * (-14 + 3 * X) ** 3

ALPHA_STAR_CONSTANTS = (118571508548, 120555, 328018829721, 21023359, 8581, 2679)


# ---------------------------------------------------------------------------
# Arguments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaDomain:
    """A sub-interval of [0, 2] for the fractional order; dimension fixed at 3."""

    interval: Interval
    d: int = DIMENSION

    def __post_init__(self) -> None:
        if self.d != DIMENSION:
            raise ValueError("only d = 3 is supported")
        lo, hi = self.interval.fractions()
        if lo < 0 or hi > 2:
            raise ValueError(f"alpha must lie in [0, 2], got [{lo}, {hi}]")

    @classmethod
    def of(cls, lo, hi=None, mode: PrecisionMode = MACHINE) -> AlphaDomain:
        return cls(Interval(lo, hi, mode))

    @property
    def mode(self) -> PrecisionMode:
        return self.interval.mode


Alpha = Union[AlphaDomain, Interval, DualInterval, int, Fraction]


def _alpha(a: Alpha, mode: PrecisionMode = MACHINE):
    if isinstance(a, AlphaDomain):
        return a.interval
    if isinstance(a, DualInterval):
        AlphaDomain(a.val)
        return a
    if isinstance(a, Interval):
        AlphaDomain(a)
        return a
    if isinstance(a, (int, Fraction)) and not isinstance(a, bool):
        return AlphaDomain(Interval(a, a, mode)).interval
    raise TypeError(f"cannot interpret {a!r} as alpha")


def _mode(a) -> PrecisionMode:
    return a.mode


@lru_cache(maxsize=None)
def _ln2(mode: PrecisionMode) -> Interval:
    return Interval(2, 2, mode).log()


@lru_cache(maxsize=None)
def _lngamma_const(q: Fraction, mode: PrecisionMode) -> Interval:
    return lngamma(Interval(q, q, mode))


def _val(v):
    return v.val if isinstance(v, DualInterval) else v


def _exp(v):
    return v.exp()


# ---------------------------------------------------------------------------
# Gamma-based quantities
# ---------------------------------------------------------------------------


def mu(n: int, alpha: Alpha):
    """mu_n = 2^α Γ(α/2+n+1) Γ((3+α)/2+n) / (n! Γ(3/2+n))."""
    if not (isinstance(n, int) and 0 <= n <= 8):
        raise ValueError("mu is defined here for integer 0 <= n <= 8")
    a = _alpha(alpha)
    m = _mode(a)
    s = a * _ln2(m) + lngamma(a / 2 + (n + 1)) + lngamma((3 + a) / 2 + n)
    s = s - _lngamma_const(Fraction(3, 2) + n, m)
    return _exp(s) / factorial(n)


def _ratio_G(a):
    # ln[ Γ(α/2+2) Γ(α+9/2) / (Γ(α/2+11/2) Γ(α+2)) ]
    return (
        lngamma(a / 2 + 2)
        + lngamma(a + Fraction(9, 2))
        - lngamma(a / 2 + Fraction(11, 2))
        - lngamma(a + 2)
    )


def lambda_cap(alpha: Alpha):
    """Λ, with the Gamma arguments kept exactly as written in its definition."""
    a = _alpha(alpha)
    num = lngamma(a / 2 + 2) + lngamma(Fraction(5, 2) + a + 2)
    den = lngamma((5 + a) / 2 + 3) + lngamma(a + 2)
    return mu(0, a) * _exp(num - den) * (19 * a + 90) / 20


def lambda_displayed(alpha: Alpha):
    """(4/15)(90+19α) Γ(α/2+2)Γ(α+9/2) / ((α+9)(α+7)(α+5) Γ(α/2+3/2)).

    This is the right-hand side obtained for Λ when the two definitions are
    substituted into the first condition.  It equals Λ·(α+3)/3, so it is an
    upper bound for Λ on α >= 0 rather than Λ itself.
    """
    a = _alpha(alpha)
    g = _exp(lngamma(a / 2 + 2) + lngamma(a + Fraction(9, 2)) - lngamma(a / 2 + Fraction(3, 2)))
    return Fraction(4, 15) * (90 + 19 * a) * g / ((a + 9) * (a + 7) * (a + 5))


def t_cap(alpha: Alpha):
    """T = (90+19α) Γ(α/2+2) Γ(α+9/2) / (Γ(α/2+11/2) Γ(α+2))."""
    a = _alpha(alpha)
    return (90 + 19 * a) * _exp(_ratio_G(a))


def f_small(alpha: Alpha):
    """f = Γ(α/2+2) Γ(α+9/2) / (Γ(α/2+11/2) Γ(α+2)), i.e. T/(90+19α)."""
    return _exp(_ratio_G(_alpha(alpha)))


def f_cap(alpha: Alpha):
    """F = Γ(α+3) Γ(α/2+9/2) / (Γ(α/2+2) Γ(α+9/2))."""
    a = _alpha(alpha)
    s = (
        lngamma(a + 3)
        + lngamma(a / 2 + Fraction(9, 2))
        - lngamma(a / 2 + 2)
        - lngamma(a + Fraction(9, 2))
    )
    return _exp(s)


def f_cap_logderiv(alpha: Alpha):
    """F'/F = Ψ(α+3) + Ψ(α/2+9/2)/2 - Ψ(α/2+2)/2 - Ψ(α+9/2)."""
    a = _alpha(alpha)
    return (
        digamma(a + 3)
        + digamma(a / 2 + Fraction(9, 2)) / 2
        - digamma(a / 2 + 2) / 2
        - digamma(a + Fraction(9, 2))
    )


def phi(alpha: Alpha):
    """Φ = ln[f(α)(α+9)/2]; Φ(0) = 0 exactly and Φ >= 0 is the lower T-bound."""
    a = _alpha(alpha)
    return (
        lngamma(a / 2 + 2)
        + lngamma(a + Fraction(9, 2))
        - lngamma(a / 2 + Fraction(9, 2))
        - lngamma(a + 2)
    )


def phi_prime(alpha: Alpha):
    """Φ' = Ψ(α/2+2)/2 + Ψ(α+9/2) - Ψ(α/2+9/2)/2 - Ψ(α+2)."""
    a = _alpha(alpha)
    return (
        digamma(a / 2 + 2) / 2
        + digamma(a + Fraction(9, 2))
        - digamma(a / 2 + Fraction(9, 2)) / 2
        - digamma(a + 2)
    )


# ---------------------------------------------------------------------------
# The quadratic g and its greatest root
# ---------------------------------------------------------------------------


def a_coef(alpha: Alpha):
    a = _alpha(alpha)
    return (14 - 3 * a) * (3 + a) / (1200 * (7 + a))


def b_coef(alpha: Alpha):
    a = _alpha(alpha)
    return -(168 + a * (64 + a * (3 - a))) / (120 * (7 + a))


def g_quadratic(alpha: Alpha, t):
    """g_α(t) = a(α) t² + b(α) t + α + 2."""
    a = _alpha(alpha)
    return a_coef(a) * t * t + b_coef(a) * t + (a + 2)


def discriminant(alpha: Alpha):
    """b² - 4a(α+2), evaluated directly from the two coefficients."""
    a = _alpha(alpha)
    b = b_coef(a)
    return b * b - 4 * a_coef(a) * (a + 2)


def x_fn(alpha: Alpha):
    """x = sqrt(α⁴-6α³+25α²+1104α+2944) / (α+7)."""
    a = _alpha(alpha)
    q = RADICAND.eval_interval(a)
    if not _val(q).lo > 0:
        raise NegativeRadicand(f"radicand enclosure {_val(q)!r} is not positive")
    return q.sqrt() / (a + 7)


def _check_discriminant(a) -> None:
    d = discriminant(_val(a))
    if d.hi < 0:
        raise NegativeDiscriminant(f"discriminant enclosure {d!r} is negative")


def h_small(alpha: Alpha):
    """h = (-b + sqrt(b² - 4a(α+2))) / (2a(90+19α)).

    The discriminant factors as α² Q / (14400 (α+7)²) with Q the radicand, so
    for α >= 0 its square root is α x(α) / 120.  That form is used here: it
    is smooth at α = 0, where the literal square root is not differentiable.
    """
    a = _alpha(alpha)
    _check_discriminant(a)
    root = a * x_fn(a) / 120
    return (root - b_coef(a)) / (2 * a_coef(a) * (90 + 19 * a))


def h_literal(alpha: Alpha) -> Interval:
    """h with the discriminant's square root taken literally (values only)."""
    a = _alpha(alpha)
    if isinstance(a, DualInterval):
        raise TypeError("the literal form of h has no derivative at α = 0")
    d = discriminant(a)
    if d.hi < 0:
        raise NegativeDiscriminant(f"discriminant enclosure {d!r} is negative")
    if d.lo < 0:
        d = Interval._new(d._k, d._k.zero(), d.hi)
    return (d.sqrt() - b_coef(a)) / (2 * a_coef(a) * (90 + 19 * a))


def fh_pair(alpha: Alpha):
    return f_small(alpha), h_small(alpha)


def g_at_T(alpha: Alpha):
    """g_α(T(α)), intersecting the expanded and the factored forms.

    With t± = (90+19α) h± the two roots, g(T) = a (T - t+)(T - t-).  Both
    forms enclose the same number; the factored one avoids the cancellation
    between a T², b T and α + 2 that makes the expanded form useless near 0.
    """
    a = _alpha(alpha)
    t = t_cap(a)
    expanded = g_quadratic(a, t)
    _check_discriminant(a)
    ac = a_coef(a)
    bc = b_coef(a)
    root = a * x_fn(a) / 120
    t_plus = (root - bc) / (2 * ac)
    t_minus = (-root - bc) / (2 * ac)
    factored = ac * (t - t_plus) * (t - t_minus)
    return _intersect(expanded, factored)


# ---------------------------------------------------------------------------
# Derivative-level quantities
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fprime0(mode: PrecisionMode = MACHINE) -> Interval:
    """f'(0) = 671/2835 - (2/9) ln 2."""
    return Fraction(671, 2835) - Fraction(2, 9) * _ln2(mode)


def r_fn(alpha: Alpha):
    """r = Ψ(α/2+2)/2 + Ψ(α+9/2) - Ψ(α/2+11/2)/2 - Ψ(α+2), so that f' = f r."""
    a = _alpha(alpha)
    return (
        digamma(a / 2 + 2) / 2
        + digamma(a + Fraction(9, 2))
        - digamma(a / 2 + Fraction(11, 2)) / 2
        - digamma(a + 2)
    )


def s_fn(alpha: Alpha):
    """s = f'(0)(α+9)/(α+2)."""
    a = _alpha(alpha)
    return fprime0(_mode(a)) * (a + 9) / (a + 2)


def r_prime(alpha: Alpha) -> Interval:
    """r' = Ψ'(α/2+2)/4 + Ψ'(α+9/2) - Ψ'(α/2+11/2)/4 - Ψ'(α+2)."""
    a = _alpha(alpha)
    if isinstance(a, DualInterval):
        raise TypeError("r' needs Ψ'', which is not provided")
    return (
        trigamma(a / 2 + 2) / 4
        + trigamma(a + Fraction(9, 2))
        - trigamma(a / 2 + Fraction(11, 2)) / 4
        - trigamma(a + 2)
    )


def r_prime_constant(alpha_hi: Fraction, mode: PrecisionMode = MACHINE) -> Interval:
    """Ψ'(2)/4 + Ψ'(9/2) - Ψ'(α/2+11/2)/4 - Ψ'(α+2) at α = alpha_hi.

    Monotonicity of Ψ' makes this an upper bound for r' on [0, alpha_hi].
    """
    a = Interval(alpha_hi, alpha_hi, mode)
    two = Interval(2, 2, mode)
    nine_half = Interval(Fraction(9, 2), Fraction(9, 2), mode)
    return (
        trigamma(two) / 4
        + trigamma(nine_half)
        - trigamma(a / 2 + Fraction(11, 2)) / 4
        - trigamma(a + 2)
    )


def s_prime(alpha: Alpha):
    """s' = (-671 + 630 ln 2) / (405 (α+2)²)."""
    a = _alpha(alpha)
    c = (630 * _ln2(_mode(a)) - 671) / 405
    return c / (a + 2).sqr()


def rs_bundle(alpha: Alpha):
    return r_fn(alpha), s_fn(alpha), r_prime(alpha), s_prime(alpha)


def _intersect(x, y):
    if isinstance(x, DualInterval):
        return DualInterval(x.val.intersect(y.val), x.der.intersect(y.der))
    return x.intersect(y)


def f_prime(alpha: Alpha) -> Interval:
    """f' as the intersection of f·r and the automatic derivative of f.

    Disjoint enclosures mean one of the two routes is wrong, so the
    resulting EmptyIntersection is allowed to propagate.
    """
    a = _alpha(alpha)
    if isinstance(a, DualInterval):
        raise TypeError("f_prime takes a plain interval")
    product = f_small(a) * r_fn(a)
    ad = f_small(DualInterval.variable(a)).der
    return product.intersect(ad)


def h_prime(alpha: Alpha) -> Interval:
    """h' by forward-mode differentiation of the closed form of h."""
    a = _alpha(alpha)
    if isinstance(a, DualInterval):
        raise TypeError("h_prime takes a plain interval")
    return h_small(DualInterval.variable(a)).der


def h_curvature(alpha: Alpha):
    """(x, A, B, h'') with h'' = -20 A / B.

    A = x P(α) + R(α) and B = K(α) Q(α) sqrt(Q(α)), where K collects the three
    cubed linear factors; P is the corrected coefficient table.
    """
    a = _alpha(alpha)
    if isinstance(a, DualInterval):
        raise TypeError("h_curvature takes a plain interval")
    q = RADICAND.eval_interval(a)
    if not q.lo > 0:
        raise NegativeRadicand(f"radicand enclosure {q!r} is not positive")
    sq = q.sqrt()
    x = sq / (a + 7)
    big_a = x * CURV_P.eval_interval(a) + CURV_R.eval_interval(a)
    k = (90 + 19 * a).pow_int(3) * (3 + a).pow_int(3) * (3 * a - 14).pow_int(3)
    big_b = k * q * sq
    return x, big_a, big_b, -20 * big_a / big_b


# ---------------------------------------------------------------------------
# α*
# ---------------------------------------------------------------------------

ALPHA_STAR_WIDTH = Fraction(1, 10**10)


def alpha_star_closed_form(mode: PrecisionMode = MACHINE) -> Interval:
    """c/2679 + 21023359/(2679 c) - 8581/2679 with c = cbrt(118571508548 + 120555 sqrt(328018829721))."""
    k1, k2, k3, k4, k5, k6 = ALPHA_STAR_CONSTANTS
    c = (k1 + k2 * Interval(k3, k3, mode).sqrt()).cbrt()
    return c / k6 + k4 / (k6 * c) - Fraction(k5, k6)


@lru_cache(maxsize=None)
def alpha_star_bracket(width: Fraction = ALPHA_STAR_WIDTH) -> RootBracket:
    """The unique root of the quartic in [0, 2], refined by exact bisection."""
    brackets = sturm_isolate(QUARTIC, (0, 2))
    if len(brackets) != 1:
        raise InconsistentAlphaStar(Interval(0, 2), brackets[0] if brackets else None)
    return refine(brackets[0], width)


def alpha_star(mode: PrecisionMode = MACHINE) -> tuple[Interval, RootBracket]:
    closed = alpha_star_closed_form(mode)
    bracket = alpha_star_bracket()
    lo, hi = closed.fractions()
    if hi < bracket.lo or lo > bracket.hi:
        raise InconsistentAlphaStar(closed, bracket)
    return closed, bracket


# ---------------------------------------------------------------------------
# Exact curvature identity
# ---------------------------------------------------------------------------


def _ext_derivative(u: RationalFn, v: RationalFn) -> tuple[RationalFn, RationalFn]:
    # d/dα (u + v sqrt(Q)) = u' + (v' + v Q'/(2Q)) sqrt(Q)
    q = RationalFn(RADICAND)
    dq = RationalFn(RADICAND.derivative())
    return u.derivative(), v.derivative() + v * dq / (2 * q)


def h_exact_parts() -> tuple[RationalFn, RationalFn]:
    """(u, v) with h = u + v sqrt(Q) exactly, as rational functions of α."""
    den = 2 * A_COEF * RationalFn(90 + 19 * X)
    u = -B_COEF / den
    v = RationalFn(X, 120 * (X + 7)) / den
    return u, v


def h_second_derivative_exact() -> tuple[RationalFn, RationalFn]:
    """(U, V) with h'' = U + V sqrt(Q), by differentiating twice in Q(α)[sqrt(Q)]."""
    u, v = h_exact_parts()
    u1, v1 = _ext_derivative(u, v)
    return _ext_derivative(u1, v1)


def curvature_identity_holds(p: IntPoly = CURV_P, r: IntPoly = CURV_R) -> bool:
    """Whether h'' = -20 (x p + r) / (K Q sqrt(Q)) holds identically.

    Splitting into rational and sqrt(Q) parts: the right side is
    -20 p / ((α+7) K Q) + (-20 r / (K Q²)) sqrt(Q).
    """
    big_u, big_v = h_second_derivative_exact()
    q = RationalFn(RADICAND)
    k = RationalFn(CURV_K)
    want_u = RationalFn(-20 * p) / (RationalFn(X + 7) * k * q)
    want_v = RationalFn(-20 * r) / (k * q * q)
    return identity_equal(big_u, want_u) and identity_equal(big_v, want_v)
