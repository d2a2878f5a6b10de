"""Directed-rounding interval arithmetic and dual intervals.

Every enclosure in the package is an :class:`Interval`.  Two endpoint
representations exist:

* machine mode: IEEE-754 binary64 floats.  Rational operations (+, -, *, /,
  sqrt, cbrt, integer powers) are rounded *exactly* in the outward direction
  by comparing the float result against the exact rational value; ``exp`` and
  ``log`` come from libm and are padded two units in the last place.
* extended mode: mpmath binary floating point at a fixed number of
  significand bits, using mpmath's directed rounding for rational operations
  and padded guard-bit evaluation for transcendental ones.

Values are immutable and carry their precision mode, so there is no global
rounding state to manage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from mpmath import libmp, mp

__all__ = [
    "IntervalError",
    "InvalidInterval",
    "DivisionByZeroInterval",
    "DomainError",
    "IntervalOverflow",
    "EmptyIntersection",
    "PrecisionMode",
    "MACHINE",
    "Interval",
    "DualInterval",
    "arith",
    "elementary",
    "split",
    "width",
    "midpoint",
    "contains",
    "dual_arith",
    "sqrt",
    "cbrt",
    "log",
    "exp",
    "pow_int",
]


class IntervalError(ArithmeticError):
    """Base class for interval arithmetic failures."""


class InvalidInterval(IntervalError, ValueError):
    pass


class DivisionByZeroInterval(IntervalError, ZeroDivisionError):
    pass


class DomainError(IntervalError, ValueError):
    pass


class IntervalOverflow(IntervalError, OverflowError):
    pass


class EmptyIntersection(IntervalError):
    """Two enclosures of the same quantity are disjoint (a soundness bug)."""


@dataclass(frozen=True)
class PrecisionMode:
    """Endpoint precision: ``machine`` (binary64) or ``extended`` (``bits`` >= 64)."""

    mode: str = "machine"
    bits: int = 53

    def __post_init__(self) -> None:
        if self.mode == "machine":
            if self.bits != 53:
                object.__setattr__(self, "bits", 53)
        elif self.mode == "extended":
            if not isinstance(self.bits, int) or self.bits < 64:
                raise ValueError(f"extended mode needs >= 64 bits, got {self.bits!r}")
        else:
            raise ValueError(f"unknown precision mode {self.mode!r}")

    @classmethod
    def extended(cls, bits: int = 128) -> PrecisionMode:
        return cls("extended", bits)

    @property
    def is_machine(self) -> bool:
        return self.mode == "machine"

    def __str__(self) -> str:
        return "machine" if self.is_machine else f"extended({self.bits})"

    @classmethod
    def parse(cls, text: str) -> PrecisionMode:
        text = text.strip()
        if text == "machine":
            return MACHINE
        if text.startswith("extended(") and text.endswith(")"):
            return cls.extended(int(text[9:-1]))
        raise ValueError(f"cannot parse precision mode {text!r}")


MACHINE = PrecisionMode()

Number = Union[int, float, Fraction, str]

# ---------------------------------------------------------------------------
# Endpoint kernels
# ---------------------------------------------------------------------------

_INF = math.inf
_nextafter = math.nextafter


def _down(x: float) -> float:
    return _nextafter(x, -_INF)


def _up(x: float) -> float:
    return _nextafter(x, _INF)


def _check_finite(x: float) -> float:
    if x != x or x in (_INF, -_INF):
        raise IntervalOverflow("endpoint is not a finite binary64 value")
    return x


def _round_ratio(n: int, d: int, up: bool) -> float:
    """Float nearest to n/d (d > 0) in the requested direction."""
    try:
        q = n / d
    except OverflowError:
        raise IntervalOverflow("endpoint exceeds binary64 range") from None
    nq, dq = q.as_integer_ratio()
    c = n * dq - nq * d  # sign of n/d - q
    if c == 0:
        return q
    if up:
        return q if c < 0 else _check_finite(_up(q))
    return q if c > 0 else _check_finite(_down(q))


class _MachineKernel:
    mode = MACHINE
    bits = 53

    # -- conversion -------------------------------------------------------
    def from_ratio(self, n: int, d: int, up: bool) -> float:
        if d < 0:
            n, d = -n, -d
        return _round_ratio(n, d, up)

    def from_float(self, x: float) -> float:
        return _check_finite(float(x))

    def to_fraction(self, x: float) -> Fraction:
        return Fraction(x)

    def to_float(self, x: float, up: bool | None = None) -> float:
        return x

    def zero(self) -> float:
        return 0.0

    # -- rational operations ----------------------------------------------
    def add(self, a: float, b: float, up: bool) -> float:
        s = a + b
        if s in (_INF, -_INF):
            raise IntervalOverflow("sum overflows binary64")
        bb = s - a
        err = (a - (s - bb)) + (b - bb)  # TwoSum: a + b == s + err exactly
        if err == 0:
            return s
        if up:
            return s if err < 0 else _check_finite(_up(s))
        return s if err > 0 else _check_finite(_down(s))

    def sub(self, a: float, b: float, up: bool) -> float:
        return self.add(a, -b, up)

    def neg(self, a: float) -> float:
        return -a

    def mul(self, a: float, b: float, up: bool) -> float:
        if a == 0.0 or b == 0.0:
            return 0.0
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        return _round_ratio(na * nb, da * db, up)

    def div(self, a: float, b: float, up: bool) -> float:
        if a == 0.0:
            return 0.0
        na, da = a.as_integer_ratio()
        nb, db = b.as_integer_ratio()
        n, d = na * db, da * nb
        if d < 0:
            n, d = -n, -d
        return _round_ratio(n, d, up)

    def pow_int(self, a: float, n: int, up: bool) -> float:
        na, da = a.as_integer_ratio()
        return _round_ratio(na**n, da**n, up)

    def sqrt(self, a: float, up: bool) -> float:
        if a == 0.0:
            return 0.0
        s = math.sqrt(a)  # correctly rounded by IEEE-754
        ns, ds = s.as_integer_ratio()
        na, da = a.as_integer_ratio()
        c = ns * ns * da - na * ds * ds  # sign of s^2 - a
        if c == 0:
            return s
        if up:
            return s if c > 0 else _up(s)
        return s if c < 0 else _down(s)

    def cbrt(self, a: float, up: bool) -> float:
        if a == 0.0:
            return 0.0
        if a < 0:
            return -self.cbrt(-a, not up)
        na, da = a.as_integer_ratio()

        def cmp(c: float) -> int:  # sign of c^3 - a
            nc, dc = c.as_integer_ratio()
            v = nc**3 * da - na * dc**3
            return (v > 0) - (v < 0)

        c = a ** (1.0 / 3.0)
        while cmp(c) > 0:
            c = _down(c)
        while cmp(_up(c)) <= 0:
            c = _up(c)
        # c is the largest float with c^3 <= a
        if cmp(c) == 0 or not up:
            return c
        return _up(c)

    # -- transcendental (libm, padded by two ulps) ------------------------
    def log(self, a: float, up: bool) -> float:
        if a == 1.0:
            return 0.0
        r = math.log(a)
        return _up(_up(r)) if up else _down(_down(r))

    def exp(self, a: float, up: bool) -> float:
        if a == 0.0:
            return 1.0
        try:
            r = math.exp(a)
        except OverflowError:
            raise IntervalOverflow("exp overflows binary64") from None
        if up:
            return _check_finite(_up(_up(r)))
        return max(_down(_down(r)), 0.0)

    def pi(self, up: bool) -> float:
        # math.pi is the binary64 value just below pi
        return _up(math.pi) if up else math.pi

    # -- helpers ----------------------------------------------------------
    def midpoint(self, a: float, b: float) -> float:
        m = 0.5 * a + 0.5 * b
        return min(max(m, a), b)

    def resolution(self, a: float, b: float) -> float:
        return math.ulp(max(abs(a), abs(b), 1e-300))

    def fmt(self, x: float) -> str:
        return repr(x)


_MAKE = mp.make_mpf
_FZERO = libmp.fzero
_NONFINITE = (libmp.finf, libmp.fninf, libmp.fnan)


def _raw_pow(raw: tuple, n: int, prec: int, rnd: str) -> tuple:
    """raw**n (n >= 1) rounded once; prec=0 keeps it exact."""
    sign, man, e, bc = raw
    m = int(man) ** n
    if sign and n % 2:
        m = -m
    return libmp.from_man_exp(m, e * n, prec, rnd)


def _raw_step(raw: tuple, prec: int, shift: int, up: bool) -> tuple:
    """Move ``raw`` outward by 2**(magnitude - prec - shift) and round to prec."""
    sign, man, e, bc = raw
    eps = (1 if not up else 0, 1, e + bc - prec - shift, 1)
    return libmp.mpf_add(raw, eps, prec, "c" if up else "f")


class _ExtendedKernel:
    def __init__(self, bits: int) -> None:
        self.bits = bits
        self.mode = PrecisionMode.extended(bits)
        self._wp = bits + 30

    @staticmethod
    def _rnd(up: bool) -> str:
        return "c" if up else "f"

    def _wrap(self, raw: tuple):
        if raw in _NONFINITE:
            raise IntervalOverflow("non-finite extended endpoint")
        return _MAKE(raw)

    def from_ratio(self, n: int, d: int, up: bool):
        if d < 0:
            n, d = -n, -d
        return self._wrap(libmp.from_rational(n, d, self.bits, self._rnd(up)))

    def from_float(self, x: float):
        _check_finite(float(x))
        return self._wrap(libmp.from_float(float(x), 53, "n"))

    def to_fraction(self, x) -> Fraction:
        sign, man, e, bc = x._mpf_
        v = int(man)
        if sign:
            v = -v
        return Fraction(v * 2**e) if e >= 0 else Fraction(v, 2**-e)

    def to_float(self, x, up: bool | None = None) -> float:
        rnd = "n" if up is None else self._rnd(up)
        return libmp.to_float(x._mpf_, rnd=rnd)

    def zero(self):
        return _MAKE(_FZERO)

    def neg(self, a):
        # mpf.__neg__ would round to the global context precision
        return _MAKE(libmp.mpf_neg(a._mpf_))

    def add(self, a, b, up: bool):
        return self._wrap(libmp.mpf_add(a._mpf_, b._mpf_, self.bits, self._rnd(up)))

    def sub(self, a, b, up: bool):
        return self._wrap(libmp.mpf_sub(a._mpf_, b._mpf_, self.bits, self._rnd(up)))

    def mul(self, a, b, up: bool):
        return self._wrap(libmp.mpf_mul(a._mpf_, b._mpf_, self.bits, self._rnd(up)))

    def div(self, a, b, up: bool):
        return self._wrap(libmp.mpf_div(a._mpf_, b._mpf_, self.bits, self._rnd(up)))

    def pow_int(self, a, n: int, up: bool):
        if a._mpf_ == _FZERO:
            return self.zero()
        return self._wrap(_raw_pow(a._mpf_, n, self.bits, self._rnd(up)))

    def sqrt(self, a, up: bool):
        raw = a._mpf_
        s = libmp.mpf_sqrt(raw, self.bits, self._rnd(up))
        c = libmp.mpf_cmp(libmp.mpf_mul(s, s, 0), raw)
        while (up and c < 0) or (not up and c > 0):
            s = _raw_step(s, self.bits, 0, up)
            c = libmp.mpf_cmp(libmp.mpf_mul(s, s, 0), raw)
        return self._wrap(s)

    def cbrt(self, a, up: bool):
        raw = a._mpf_
        if raw == _FZERO:
            return self.zero()
        if libmp.mpf_sign(raw) < 0:
            return self.neg(self.cbrt(self.neg(a), not up))
        c = libmp.mpf_cbrt(raw, self.bits, self._rnd(up))

        def cmp(v):
            return libmp.mpf_cmp(_raw_pow(v, 3, 0, "n"), raw)

        while (up and cmp(c) < 0) or (not up and cmp(c) > 0):
            c = _raw_step(c, self.bits, 0, up)
        return self._wrap(c)

    def log(self, a, up: bool):
        raw = a._mpf_
        if raw == libmp.fone:
            return self.zero()
        r = libmp.mpf_log(raw, self._wp, "n")
        return self._wrap(_raw_step(r, self.bits, 12, up))

    def exp(self, a, up: bool):
        raw = a._mpf_
        if raw == _FZERO:
            return self._wrap(libmp.fone)
        r = libmp.mpf_exp(raw, self._wp, "n")
        return self._wrap(_raw_step(r, self.bits, 12, up))

    def pi(self, up: bool):
        r = libmp.mpf_pi(self._wp, "n")
        return self._wrap(_raw_step(r, self.bits, 12, up))

    def midpoint(self, a, b):
        s = libmp.mpf_add(a._mpf_, b._mpf_, self.bits + 1, "n")
        return self._wrap(libmp.mpf_shift(libmp.mpf_pos(s, self.bits, "n"), -1))

    def resolution(self, a, b) -> float:
        mag = max(abs(self.to_float(a)), abs(self.to_float(b)), 1e-300)
        return mag * 2.0 ** (1 - self.bits)

    def fmt(self, x) -> str:
        return libmp.to_str(x._mpf_, max(20, int(self.bits * 0.302) + 2))


_MACHINE_KERNEL = _MachineKernel()


@lru_cache(maxsize=None)
def _extended_kernel(bits: int) -> _ExtendedKernel:
    return _ExtendedKernel(bits)


def kernel_for(mode: PrecisionMode):
    if mode.is_machine:
        return _MACHINE_KERNEL
    return _extended_kernel(mode.bits)


def _promote(k1, k2):
    if k1 is k2:
        return k1
    return k1 if k1.bits >= k2.bits else k2


def _exact_ratio(v) -> tuple[int, int]:
    """Exact numerator/denominator of an int, Fraction, float or mpf."""
    if isinstance(v, bool):
        raise TypeError("bool is not a number here")
    if isinstance(v, int):
        return v, 1
    if isinstance(v, float):
        _check_finite(v)
        return v.as_integer_ratio()
    if isinstance(v, Rational):
        return v.numerator, v.denominator
    if isinstance(v, str):
        q = Fraction(v)
        return q.numerator, q.denominator
    if hasattr(v, "_mpf_"):
        if v._mpf_ in _NONFINITE:
            raise IntervalOverflow("non-finite value")
        q = _extended_kernel(64).to_fraction(v)
        return q.numerator, q.denominator
    raise TypeError(f"cannot use {type(v).__name__} as an exact number")


def _convert_endpoint(k, v, up: bool):
    if isinstance(v, float) and k is _MACHINE_KERNEL:
        return _check_finite(v)
    if hasattr(v, "_mpf_") and k is not _MACHINE_KERNEL:
        if v._mpf_ in _NONFINITE:
            raise IntervalOverflow("non-finite endpoint")
        return k._wrap(libmp.mpf_pos(v._mpf_, k.bits, k._rnd(up)))
    n, d = _exact_ratio(v)
    return k.from_ratio(n, d, up)


# ---------------------------------------------------------------------------
# Interval
# ---------------------------------------------------------------------------


class Interval:
    """Closed interval ``[lo, hi]`` with outward-rounded finite endpoints.

    Exact inputs (ints, Fractions, decimal strings) are rounded outward on
    construction, so ``Interval("0.1")`` encloses one tenth.
    """

    __slots__ = ("lo", "hi", "_k")

    def __init__(self, lo, hi=None, mode: PrecisionMode = MACHINE) -> None:
        if hi is None:
            hi = lo
        k = kernel_for(mode)
        a = _convert_endpoint(k, lo, up=False)
        b = _convert_endpoint(k, hi, up=True)
        if not a <= b:
            raise InvalidInterval(f"empty interval: lo={lo!r} > hi={hi!r}")
        object.__setattr__(self, "lo", a)
        object.__setattr__(self, "hi", b)
        object.__setattr__(self, "_k", k)

    @classmethod
    def _new(cls, k, lo, hi) -> Interval:
        self = object.__new__(cls)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "_k", k)
        return self

    @classmethod
    def point(cls, q, mode: PrecisionMode = MACHINE) -> Interval:
        return cls(q, q, mode)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        k = self._k
        return (Interval, (k.to_fraction(self.lo), k.to_fraction(self.hi), k.mode))

    @property
    def mode(self) -> PrecisionMode:
        return self._k.mode

    def with_mode(self, mode: PrecisionMode) -> Interval:
        """Re-round the endpoints (outward) into another precision mode."""
        if mode == self.mode:
            return self
        k = self._k
        return Interval(k.to_fraction(self.lo), k.to_fraction(self.hi), mode)

    # -- comparison and inspection -----------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        k = self._k
        tag = "" if k is _MACHINE_KERNEL else f", {k.mode}"
        return f"Interval([{k.fmt(self.lo)}, {k.fmt(self.hi)}]{tag})"

    def fractions(self) -> tuple[Fraction, Fraction]:
        k = self._k
        return k.to_fraction(self.lo), k.to_fraction(self.hi)

    def floats(self) -> tuple[float, float]:
        """Endpoints as binary64, rounded outward."""
        k = self._k
        return k.to_float(self.lo, up=False), k.to_float(self.hi, up=True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self):
        return self._k.sub(self.hi, self.lo, up=True)

    def midpoint(self):
        return self._k.midpoint(self.lo, self.hi)

    def mag(self):
        k = self._k
        return max(k.neg(self.lo), self.hi) if self.lo < 0 else self.hi

    def contains(self, p) -> bool:
        if isinstance(p, Interval):
            return self.lo <= p.lo and p.hi <= self.hi
        if isinstance(p, float):
            if self._k is _MACHINE_KERNEL:
                return self.lo <= p <= self.hi
        lo, hi = self.fractions()
        q = p if isinstance(p, Fraction) else Fraction(*_exact_ratio(p))
        return lo <= q <= hi

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def overlaps(self, other: Interval) -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def intersect(self, other: Interval) -> Interval:
        if not self.overlaps(other):
            raise EmptyIntersection(f"{self!r} and {other!r} are disjoint")
        k = _promote(self._k, other._k)
        a, b = self._coerce_pair(other, k)
        return Interval._new(k, max(a.lo, b.lo), min(a.hi, b.hi))

    def hull(self, other: Interval) -> Interval:
        k = _promote(self._k, other._k)
        a, b = self._coerce_pair(other, k)
        return Interval._new(k, min(a.lo, b.lo), max(a.hi, b.hi))

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def split(self) -> tuple[Interval, Interval]:
        m = self.midpoint()
        k = self._k
        return Interval._new(k, self.lo, m), Interval._new(k, m, self.hi)

    # -- coercion -----------------------------------------------------------
    def _coerce_pair(self, other: Interval, k):
        a = self if self._k is k else self.with_mode(k.mode)
        b = other if other._k is k else other.with_mode(k.mode)
        return a, b

    def _lift(self, v) -> Interval | None:
        if isinstance(v, Interval):
            return v
        if isinstance(v, (int, float, Fraction)) and not isinstance(v, bool):
            return Interval(v, v, self.mode)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> Interval:
        k = self._k
        return Interval._new(k, k.neg(self.hi), k.neg(self.lo))

    def __pos__(self) -> Interval:
        return self

    def __add__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = _promote(self._k, o._k)
        x, y = self._coerce_pair(o, k)
        return Interval._new(k, k.add(x.lo, y.lo, False), k.add(x.hi, y.hi, True))

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = _promote(self._k, o._k)
        x, y = self._coerce_pair(o, k)
        return Interval._new(k, k.sub(x.lo, y.hi, False), k.sub(x.hi, y.lo, True))

    def __rsub__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = _promote(self._k, o._k)
        x, y = self._coerce_pair(o, k)
        a, b, c, d = x.lo, x.hi, y.lo, y.hi
        m = k.mul
        if a >= 0:
            if c >= 0:
                lo, hi = m(a, c, False), m(b, d, True)
            elif d <= 0:
                lo, hi = m(b, c, False), m(a, d, True)
            else:
                lo, hi = m(b, c, False), m(b, d, True)
        elif b <= 0:
            if c >= 0:
                lo, hi = m(a, d, False), m(b, c, True)
            elif d <= 0:
                lo, hi = m(b, d, False), m(a, c, True)
            else:
                lo, hi = m(a, d, False), m(a, c, True)
        else:
            if c >= 0:
                lo, hi = m(a, d, False), m(b, d, True)
            elif d <= 0:
                lo, hi = m(b, c, False), m(a, c, True)
            else:
                lo = min(m(a, d, False), m(b, c, False))
                hi = max(m(a, c, True), m(b, d, True))
        return Interval._new(k, lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        k = _promote(self._k, o._k)
        x, y = self._coerce_pair(o, k)
        a, b, c, d = x.lo, x.hi, y.lo, y.hi
        if c <= 0 <= d:
            raise DivisionByZeroInterval(f"division by {o!r}, which contains 0")
        q = k.div
        if c > 0:
            if a >= 0:
                lo, hi = q(a, d, False), q(b, c, True)
            elif b <= 0:
                lo, hi = q(a, c, False), q(b, d, True)
            else:
                lo, hi = q(a, c, False), q(b, c, True)
        else:
            if a >= 0:
                lo, hi = q(b, d, False), q(a, c, True)
            elif b <= 0:
                lo, hi = q(b, c, False), q(a, d, True)
            else:
                lo, hi = q(b, d, False), q(a, d, True)
        return Interval._new(k, lo, hi)

    def __rtruediv__(self, other) -> Interval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> Interval:
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return self.pow_int(n)

    def pow_int(self, n: int) -> Interval:
        k = self._k
        if n == 0:
            one = k.from_ratio(1, 1, False)
            return Interval._new(k, one, one)
        if n < 0:
            if self.lo <= 0 <= self.hi:
                raise DomainError(f"negative power of {self!r}, which contains 0")
            return 1 / self.pow_int(-n)
        a, b = self.lo, self.hi
        p = k.pow_int
        if n % 2 == 1 or a >= 0:
            return Interval._new(k, p(a, n, False), p(b, n, True))
        if b <= 0:
            return Interval._new(k, p(b, n, False), p(a, n, True))
        return Interval._new(k, k.zero(), max(p(a, n, True), p(b, n, True)))

    def sqr(self) -> Interval:
        return self.pow_int(2)

    def sqrt(self) -> Interval:
        if self.lo < 0:
            raise DomainError(f"sqrt of {self!r}, which has negative part")
        k = self._k
        return Interval._new(k, k.sqrt(self.lo, False), k.sqrt(self.hi, True))

    def cbrt(self) -> Interval:
        k = self._k
        return Interval._new(k, k.cbrt(self.lo, False), k.cbrt(self.hi, True))

    def log(self) -> Interval:
        if self.lo <= 0:
            raise DomainError(f"log of {self!r}, which is not strictly positive")
        k = self._k
        return Interval._new(k, k.log(self.lo, False), k.log(self.hi, True))

    def exp(self) -> Interval:
        k = self._k
        return Interval._new(k, k.exp(self.lo, False), k.exp(self.hi, True))

    def abs(self) -> Interval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        k = self._k
        return Interval._new(k, k.zero(), max(k.neg(self.lo), self.hi))


def pi(mode: PrecisionMode = MACHINE) -> Interval:
    k = kernel_for(mode)
    return Interval._new(k, k.pi(False), k.pi(True))


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------


def arith(op: str, x: Interval, y: Interval) -> Interval:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def elementary(fn: str, x: Interval, n: int | None = None) -> Interval:
    if fn == "pow_int":
        if n is None:
            raise ValueError("pow_int needs an exponent")
        return x.pow_int(n)
    if fn == "ln":
        fn = "log"
    if fn not in ("sqrt", "cbrt", "log", "exp"):
        raise ValueError(f"unknown function {fn!r}")
    return getattr(x, fn)()


def split(x: Interval) -> tuple[Interval, Interval]:
    return x.split()


def width(x: Interval):
    return x.width()


def midpoint(x: Interval):
    return x.midpoint()


def contains(x: Interval, p) -> bool:
    return x.contains(p)


# ---------------------------------------------------------------------------
# Dual intervals (forward-mode derivative enclosures)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualInterval:
    """Value and first-derivative enclosures, propagated by the chain rule."""

    val: Interval
    der: Interval

    @classmethod
    def variable(cls, x: Interval) -> DualInterval:
        return cls(x, Interval(1, 1, x.mode))

    @classmethod
    def constant(cls, x: Interval) -> DualInterval:
        return cls(x, Interval(0, 0, x.mode))

    @property
    def mode(self) -> PrecisionMode:
        return self.val.mode

    def _lift(self, v) -> DualInterval | None:
        if isinstance(v, DualInterval):
            return v
        if isinstance(v, Interval):
            return DualInterval.constant(v)
        if isinstance(v, (int, float, Fraction)) and not isinstance(v, bool):
            return DualInterval.constant(Interval(v, v, self.mode))
        return None

    def __neg__(self) -> DualInterval:
        return DualInterval(-self.val, -self.der)

    def __add__(self, other) -> DualInterval:
        if isinstance(other, (int, float, Fraction, Interval)) and not isinstance(other, bool):
            return DualInterval(self.val + other, self.der)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualInterval(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __sub__(self, other) -> DualInterval:
        if isinstance(other, (int, float, Fraction, Interval)) and not isinstance(other, bool):
            return DualInterval(self.val - other, self.der)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualInterval(self.val - o.val, self.der - o.der)

    def __rsub__(self, other) -> DualInterval:
        return (-self) + other

    def __mul__(self, other) -> DualInterval:
        if isinstance(other, (int, float, Fraction, Interval)) and not isinstance(other, bool):
            return DualInterval(self.val * other, self.der * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DualInterval(self.val * o.val, self.der * o.val + self.val * o.der)

    __rmul__ = __mul__

    def __truediv__(self, other) -> DualInterval:
        if isinstance(other, (int, float, Fraction, Interval)) and not isinstance(other, bool):
            return DualInterval(self.val / other, self.der / other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        q = self.val / o.val
        return DualInterval(q, (self.der - q * o.der) / o.val)

    def __rtruediv__(self, other) -> DualInterval:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> DualInterval:
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return self.pow_int(n)

    def pow_int(self, n: int) -> DualInterval:
        if n == 0:
            return DualInterval.constant(self.val.pow_int(0))
        return DualInterval(self.val.pow_int(n), n * self.val.pow_int(n - 1) * self.der)

    def sqr(self) -> DualInterval:
        return self.pow_int(2)

    def sqrt(self) -> DualInterval:
        if self.val.lo <= 0:
            raise DomainError("sqrt derivative needs a strictly positive argument")
        r = self.val.sqrt()
        return DualInterval(r, self.der / (2 * r))

    def cbrt(self) -> DualInterval:
        if self.val.lo <= 0 <= self.val.hi:
            raise DomainError("cbrt derivative needs an argument excluding 0")
        r = self.val.cbrt()
        return DualInterval(r, self.der / (3 * r.sqr()))

    def log(self) -> DualInterval:
        return DualInterval(self.val.log(), self.der / self.val)

    def exp(self) -> DualInterval:
        e = self.val.exp()
        return DualInterval(e, e * self.der)


def dual_arith(op: str, x: DualInterval, y: DualInterval) -> DualInterval:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sqrt(x):
    return x.sqrt()


def cbrt(x):
    return x.cbrt()


def log(x):
    return x.log()


def exp(x):
    return x.exp()


def pow_int(x, n: int):
    return x.pow_int(n)
