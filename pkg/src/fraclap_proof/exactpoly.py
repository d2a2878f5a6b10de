"""Exact integer polynomials, rational functions and Sturm root isolation.

Nothing here rounds: coefficients are Python integers, evaluation points
are :class:`fractions.Fraction`, and sign questions on an interval are
settled by Sturm sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPoly",
    "RationalFn",
    "RootBracket",
    "SignCertificate",
    "DenominatorZero",
    "NonSquareFree",
    "HasRoots",
    "X",
    "eval_exact",
    "sturm_sequence",
    "count_roots",
    "sturm_isolate",
    "refine",
    "sign_on_interval",
    "identity_equal",
    "poly_gcd",
    "squarefree_part",
]


class DenominatorZero(ZeroDivisionError):
    pass


class NonSquareFree(ValueError):
    pass


class HasRoots(ValueError):
    def __init__(self, brackets: list[RootBracket]):
        self.brackets = brackets
        spans = ", ".join(f"[{b.lo}, {b.hi}]" for b in brackets)
        super().__init__(f"polynomial has {len(brackets)} root(s) in the domain: {spans}")


RationalLike = Union[int, Fraction]


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        for v in c:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"IntPoly coefficients must be int, got {v!r}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> IntPoly:
        return cls(tuple(reversed(tuple(coeffs))))

    # -- structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide by the content; leading coefficient made positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def lowest_power(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def factor_x_power(self) -> tuple[int, IntPoly]:
        """Split off the largest power of the variable: self = x^k * cofactor."""
        k = self.lowest_power()
        return k, IntPoly(self.coeffs[k:])

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other) -> IntPoly | None:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPoly((other,))
        return None

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (IntPoly, int)) and not isinstance(other, bool):
            return RationalFn(self, self._lift(other))
        return NotImplemented

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, other: IntPoly) -> IntPoly:
        out = IntPoly()
        for c in reversed(self.coeffs):
            out = out * other + c
        return out

    # -- evaluation ------------------------------------------------------
    def __call__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.eval_exact(q)
        return self.eval_interval(q)

    def eval_exact(self, q: RationalLike) -> Fraction:
        q = _q(q)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def sign_at(self, q: RationalLike) -> int:
        """Sign of p(q), via the integer d^deg * p(n/d)."""
        q = _q(q)
        n, d = q.numerator, q.denominator
        acc = 0
        dk = 1
        for c in reversed(self.coeffs):
            acc = acc * n + c * dk
            dk *= d
        return (acc > 0) - (acc < 0)

    def eval_interval(self, x):
        """Horner evaluation over an Interval or DualInterval."""
        if not self.coeffs:
            return x * 0
        acc = None
        for c in reversed(self.coeffs):
            acc = (x * 0 + c) if acc is None else acc * x + c
        return acc

    # -- division --------------------------------------------------------
    def pseudo_divmod(self, b: IntPoly) -> tuple[IntPoly, IntPoly, int]:
        """(q, r, e) with lc(b)^e * self = q*b + r and deg r < deg b."""
        if not b.coeffs:
            raise ZeroDivisionError("pseudo-division by the zero polynomial")
        db = b.degree
        lb = b.lc
        r = list(self.coeffs)
        q = [0] * max(len(r) - db, 0)
        e = 0
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            lr = r[-1]
            r = [c * lb for c in r]
            q = [c * lb for c in q]
            q[shift] += lr
            for j, bc in enumerate(b.coeffs):
                r[shift + j] -= lr * bc
            e += 1
            while r and r[-1] == 0:
                r.pop()
        return IntPoly(tuple(q)), IntPoly(tuple(r)), e

    def exact_div(self, b: IntPoly) -> IntPoly:
        """Quotient over Z, raising if b does not divide self exactly."""
        q, r, e = self.pseudo_divmod(b)
        if r.coeffs:
            raise ValueError(f"{b} does not divide {self}")
        s = b.lc**e
        out = []
        for c in q.coeffs:
            if c % s:
                raise ValueError(f"{b} does not divide {self} over the integers")
            out.append(c // s)
        return IntPoly(tuple(out))


X = IntPoly((0, 1))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a, b = a.primitive(), b.primitive()
    while b.coeffs:
        _, r, _ = a.pseudo_divmod(b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p.primitive().exact_div(g).primitive()


@dataclass(frozen=True, eq=False)
class RationalFn:
    """Quotient of two integer polynomials; equality is cross-multiplication."""

    num: IntPoly
    den: IntPoly = IntPoly((1,))

    def __post_init__(self) -> None:
        if isinstance(self.num, int):
            object.__setattr__(self, "num", IntPoly((self.num,)))
        if isinstance(self.den, int):
            object.__setattr__(self, "den", IntPoly((self.den,)))
        if self.den.is_zero():
            raise DenominatorZero("rational function with zero denominator")

    @classmethod
    def of(cls, v) -> RationalFn:
        if isinstance(v, RationalFn):
            return v
        if isinstance(v, IntPoly):
            return cls(v)
        if isinstance(v, Fraction):
            return cls(IntPoly((v.numerator,)), IntPoly((v.denominator,)))
        if isinstance(v, int) and not isinstance(v, bool):
            return cls(IntPoly((v,)))
        raise TypeError(f"cannot make a rational function from {v!r}")

    def __repr__(self) -> str:
        return f"RationalFn(({self.num}) / ({self.den}))"

    def __eq__(self, other) -> bool:
        try:
            o = RationalFn.of(other)
        except TypeError:
            return NotImplemented
        return identity_equal(self, o)

    __hash__ = None  # type: ignore[assignment]

    def reduced(self) -> RationalFn:
        g = poly_gcd(self.num, self.den) if self.num.coeffs else self.den.primitive()
        if g.degree <= 0:
            num, den = self.num, self.den
        else:
            num, den = self.num.exact_div(g), self.den.exact_div(g)
        c = gcd(num.content(), den.content()) or 1
        if den.lc < 0:
            c = -c
        return RationalFn(IntPoly(tuple(v // c for v in num.coeffs)), IntPoly(tuple(v // c for v in den.coeffs)))

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __add__(self, other):
        try:
            o = RationalFn.of(other)
        except TypeError:
            return NotImplemented
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = RationalFn.of(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = RationalFn.of(other)
        except TypeError:
            return NotImplemented
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = RationalFn.of(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise DenominatorZero("division by the zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFn.of(other) / self

    def __pow__(self, n: int) -> RationalFn:
        if n >= 0:
            return RationalFn(self.num**n, self.den**n)
        return RationalFn(self.den ** (-n), self.num ** (-n))

    def derivative(self) -> RationalFn:
        n, d = self.num, self.den
        return RationalFn(n.derivative() * d - n * d.derivative(), d * d)

    def eval_exact(self, q: RationalLike) -> Fraction:
        d = self.den.eval_exact(q)
        if d == 0:
            raise DenominatorZero(f"denominator vanishes at {q}")
        return self.num.eval_exact(q) / d

    def eval_interval(self, x):
        return self.num.eval_interval(x) / self.den.eval_interval(x)

    def __call__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.eval_exact(q)
        return self.eval_interval(q)


def eval_exact(p: IntPoly | RationalFn, q: RationalLike) -> Fraction:
    return p.eval_exact(q)


def identity_equal(lhs: RationalFn | IntPoly, rhs: RationalFn | IntPoly) -> bool:
    """True iff lhs and rhs are the same rational function."""
    a, b = RationalFn.of(lhs), RationalFn.of(rhs)
    return (a.num * b.den - b.num * a.den).is_zero()


# ---------------------------------------------------------------------------
# Sturm machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def sturm_sequence(p: IntPoly) -> tuple[IntPoly, ...]:
    """Sturm sequence with each remainder scaled by a positive constant."""
    if p.degree < 1:
        return (p,)
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        _, r, e = a.pseudo_divmod(b)
        if r.is_zero():
            break
        if b.lc < 0 and e % 2 == 1:
            r = -r  # lc(b)^e < 0 flips the sign of the true remainder
        r = -r
        g = r.content()
        seq.append(IntPoly(tuple(c // g for c in r.coeffs)))
    return tuple(seq)


def _variations(seq: Sequence[IntPoly], q: Fraction) -> int:
    v = 0
    prev = 0
    for s in seq:
        sg = s.sign_at(q)
        if sg:
            if prev and sg != prev:
                v += 1
            prev = sg
    return v


def _require_squarefree(p: IntPoly) -> None:
    if p.is_zero():
        raise NonSquareFree("the zero polynomial has no isolated roots")
    if p.degree >= 1 and poly_gcd(p, p.derivative()).degree > 0:
        raise NonSquareFree(f"{p} has a repeated factor")


def count_roots(p: IntPoly, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    lo, hi = _q(lo), _q(hi)
    if lo > hi:
        raise ValueError("empty domain")
    sf = squarefree_part(p) if p.degree >= 1 else p
    if sf.degree < 1:
        return 0
    seq = sturm_sequence(sf)
    n = _variations(seq, lo) - _variations(seq, hi)
    return n + (1 if sf.sign_at(lo) == 0 else 0)


@dataclass(frozen=True)
class RootBracket:
    """Rational interval holding exactly one real root of ``poly``.

    ``exact`` marks a degenerate bracket lo == hi at a rational root.
    """

    poly: IntPoly
    lo: Fraction
    hi: Fraction
    exact: bool = False

    def __post_init__(self) -> None:
        lo, hi = _q(self.lo), _q(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        p = self.poly
        if self.exact:
            if lo != hi or p.sign_at(lo) != 0:
                raise ValueError("exact bracket must be a single rational root")
            return
        if not lo < hi:
            raise ValueError("bracket must have lo < hi")
        if p.sign_at(lo) * p.sign_at(hi) >= 0:
            raise ValueError("bracket endpoints must have strictly opposite signs")
        if count_roots(p, lo, hi) != 1:
            raise ValueError("bracket must hold exactly one root")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def sturm_isolate(p: IntPoly, domain: tuple[RationalLike, RationalLike]) -> list[RootBracket]:
    """Disjoint brackets, one per real root of p in the closed domain."""
    _require_squarefree(p)
    lo, hi = _q(domain[0]), _q(domain[1])
    if lo > hi:
        raise ValueError("empty domain")
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    out: list[RootBracket] = []
    if p.sign_at(lo) == 0:
        out.append(RootBracket(p, lo, lo, exact=True))

    # each stack entry is a half-open (a, b] with its variation counts
    stack = [(lo, hi, _variations(seq, lo), _variations(seq, hi))]
    found: list[RootBracket] = []
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            if p.sign_at(b) == 0:
                found.append(RootBracket(p, b, b, exact=True))
                continue
            if p.sign_at(a) != 0:
                found.append(RootBracket(p, a, b))
                continue
        m = (a + b) / 2
        vm = _variations(seq, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    found.sort(key=lambda br: br.lo)
    out.extend(found)
    return _separate(out)


def _separate(brackets: list[RootBracket]) -> list[RootBracket]:
    """Shrink neighbours that touch at a shared (non-root) endpoint."""
    out = list(brackets)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            a, b = out[i], out[i + 1]
            if a.hi >= b.lo:
                out[i] = _bisect_once(a)
                out[i + 1] = _bisect_once(b)
                changed = True
    return out


def _bisect_once(b: RootBracket) -> RootBracket:
    if b.exact:
        return b
    p = b.poly
    m = (b.lo + b.hi) / 2
    sm = p.sign_at(m)
    if sm == 0:
        return RootBracket(p, m, m, exact=True)
    if sm == p.sign_at(b.lo):
        return RootBracket(p, m, b.hi)
    return RootBracket(p, b.lo, m)


def refine(b: RootBracket, target_width: RationalLike) -> RootBracket:
    """Bisect on exact signs until the bracket width is at most target_width."""
    target = _q(target_width)
    if b.exact or b.width <= target:
        return b
    p = b.poly
    lo, hi = b.lo, b.hi
    s_lo = p.sign_at(lo)
    while hi - lo > target:
        m = (lo + hi) / 2
        sm = p.sign_at(m)
        if sm == 0:
            return RootBracket(p, m, m, exact=True)
        if sm == s_lo:
            lo = m
        else:
            hi = m
    return RootBracket(p, lo, hi)


@dataclass(frozen=True)
class SignCertificate:
    """Constant sign of a polynomial on a closed rational interval."""

    poly: IntPoly
    lo: Fraction
    hi: Fraction
    sign: int
    root_count: int
    sample: Fraction
    sample_value: Fraction

    @property
    def symbol(self) -> str:
        return "+" if self.sign > 0 else "-"


def sign_on_interval(p: IntPoly, domain: tuple[RationalLike, RationalLike]) -> SignCertificate:
    """Certify that p has no root on the closed domain and report its sign."""
    lo, hi = _q(domain[0]), _q(domain[1])
    if p.is_zero():
        raise HasRoots([])
    n = count_roots(p, lo, hi)
    if n:
        raise HasRoots(sturm_isolate(squarefree_part(p), (lo, hi)))
    v = p.eval_exact(lo)
    return SignCertificate(p, lo, hi, 1 if v > 0 else -1, 0, lo, v)


def product(polys: Iterable[IntPoly]) -> IntPoly:
    out = IntPoly((1,))
    for p in polys:
        out = out * p
    return out
