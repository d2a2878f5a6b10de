"""The twenty claims whose conjunction yields both sufficient conditions.

Condition 1 is mu_2 > Lambda on (0, 2]; condition 2 is g_α(T(α)) < 0 on
(0, 2].  Claims C01 to C16 are the individual steps, C17 to C19 compose
them, and C20 re-checks both conditions by brute force on [delta, 2].

Wherever an inequality degenerates to an equality at α = 0, strictness is
obtained either by factoring out a power of α exactly or by lifting from
the anchor through a derivative sign, never by bisecting up to 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import paperfn as pf
from .exactpoly import X, HasRoots, IntPoly, RationalFn, identity_equal, sign_on_interval, sturm_isolate
from .interval import Interval, PrecisionMode
from .prover import (
    Certificate,
    Claim,
    Kind,
    ProverConfig,
    Status,
    SubCheck,
    Target,
    combine,
    fmt_q,
    verify_monotone_bound,
    verify_overlap,
    verify_sign,
)
from .specfun import gamma, lngamma

__all__ = ["build_registry", "alpha_star_ub", "alpha_star_lb", "C17_DEPS"]

ZERO, TWO = Fraction(0), Fraction(2)
FULL = (ZERO, TWO)
F083 = Fraction(83, 1000)
R_CONST_BOUND = Fraction(-1795, 10000)
S_PRIME_BOUND = Fraction(-1447, 10000)
TIGHT = Fraction(1, 10**10)
HIGH = PrecisionMode.extended(256)


def alpha_star_ub() -> Fraction:
    return pf.alpha_star_bracket().hi


def alpha_star_lb() -> Fraction:
    return pf.alpha_star_bracket().lo


def _ok(flag: bool) -> Status:
    return Status.VERIFIED if flag else Status.FAILED


def _check(name: str, flag: bool, detail: str = "") -> SubCheck:
    return SubCheck(name, _ok(flag), detail)


def _sign(p: IntPoly, domain, want: int, name: str) -> tuple[SubCheck, int]:
    """Exact Sturm sign check; returns the sub-check and the Sturm count used."""
    try:
        cert = sign_on_interval(p, domain)
    except HasRoots as e:
        return SubCheck(name, Status.FAILED, str(e)), 1
    ok = cert.sign == want
    return _check(name, ok, f"{p} has no root on [{fmt_q(cert.lo)}, {fmt_q(cert.hi)}], sign {cert.symbol}"), 1


def _exact(cid: str, domain, checks: list[SubCheck], boxes: int, cfg: ProverConfig, note: str = "") -> Certificate:
    status = Status.VERIFIED
    for c in checks:
        if c.status is Status.FAILED:
            status = Status.FAILED
    return Certificate(
        cid, Kind.EXACT_POLY, status, (Fraction(domain[0]), Fraction(domain[1])),
        boxes_examined=boxes, covered=(tuple(map(Fraction, domain)),) if status is Status.VERIFIED else (),
        checks=tuple(checks), note=note, config=cfg.to_dict(),
    )


def _contains_q(x: Interval, q: Fraction) -> bool:
    return x.contains(q)


def _width_le(x: Interval, w: Fraction) -> bool:
    lo, hi = x.fractions()
    return hi - lo <= w


# ---------------------------------------------------------------------------
# Condition 1
# ---------------------------------------------------------------------------


def _c01(cfg: ProverConfig, deps: Mapping[str, Certificate]) -> Certificate:
    return verify_overlap(
        lambda a: pf.mu(2, a), lambda a: gamma(a + 6) / 120, FULL, cfg=cfg, claim_id="C01",
        note="mu_2(α) against Γ(α+6)/120",
    )


def _c02_lhs(a):
    s = lngamma(a / 2 + 2) + lngamma(a + Fraction(9, 2)) - lngamma(a + 6) - lngamma(a / 2 + Fraction(3, 2))
    return 32 * s.exp()


def _c02_rhs(a):
    return 4 * (a + 7) / (a + 4) / pf.f_cap(a)


def _c02(cfg, deps):
    return verify_overlap(_c02_lhs, _c02_rhs, FULL, cfg=cfg, claim_id="C02",
                          note="Gamma quotient against 4(α+7)/((α+4)F(α))")


def _c03(cfg, deps):
    sign = verify_sign(pf.f_cap_logderiv, FULL, Target.POSITIVE, cfg, claim_id="F'/F > 0")
    f0 = pf.f_cap(0)
    anchor = _check("F(0) = 2", _contains_q(f0, TWO) and _width_le(f0, TIGHT),
                    "Γ(3)Γ(9/2)/(Γ(2)Γ(9/2)) = 2 exactly; enclosure " + repr(f0))
    return combine("C03", Kind.SIGN, FULL, [sign], [anchor], cfg=cfg,
                   note="F increasing on [0, 2], hence F >= F(0) = 2")


def _c04(cfg, deps):
    lhs = (X + 9) * (X + 7) * (X + 5) * (X + 4) - 2 * (X + 7) * (90 + 19 * X)
    cof = (X + 7) * (X * X + 18 * X + 63)
    ident = _check("identity", identity_equal(lhs, X * cof),
                   "(α+9)(α+7)(α+5)(α+4) - 2(α+7)(90+19α) = α(α+7)(α²+18α+63)")
    s1, n1 = _sign(cof, FULL, 1, "cofactor > 0")
    s2, n2 = _sign(90 + 19 * X, FULL, 1, "90+19α > 0")
    s3, n3 = _sign((X + 4) * (X + 7), FULL, 1, "(α+4)(α+7) > 0")
    return _exact("C04", FULL, [ident, s1, s2, s3], n1 + n2 + n3, cfg,
                  note="(α+9)(α+7)(α+5)/(90+19α) > 2(α+7)/(α+4) for α in (0, 2]")


def _lambda_via_display(a):
    return 3 * pf.lambda_displayed(a) / (a + 3)


def _c19(cfg, deps):
    ov = verify_overlap(pf.lambda_cap, _lambda_via_display, FULL, cfg=cfg, claim_id="Λ = 3/(α+3)·display",
                        note="Λ equals the substituted right-hand side times 3/(α+3)")
    ident = _check("1 - 3/(α+3) = α/(α+3)",
                   identity_equal(1 - RationalFn(IntPoly((3,)), X + 3), RationalFn(X, X + 3)))
    s, n = _sign(X + 3, FULL, 1, "α+3 > 0")
    return combine(
        "C19", Kind.COMPOSE, (ZERO, TWO), [ov], [ident, s], cfg=cfg,
        note=("mu_2 = Γ(α+6)/120 > (4/15)(90+19α)G/((α+9)(α+7)(α+5)) >= Λ on (0, 2]: "
              "C02 and C03 bound the Gamma quotient by 2(α+7)/(α+4), C04 makes that strict, "
              "and 3/(α+3) <= 1 closes the gap to Λ"),
    )


# ---------------------------------------------------------------------------
# Bounds for T and the two T-bound evaluations of g
# ---------------------------------------------------------------------------


def _f_from_phi(a):
    return 2 * pf.phi(a).exp() / (a + 9)


def _c05(cfg, deps):
    sign = verify_sign(pf.phi_prime, FULL, Target.POSITIVE, cfg, claim_id="Φ' > 0")
    parts = [sign]
    checks = []
    phi0 = pf.phi(0)
    checks.append(_check("Φ(0) = 0", _contains_q(phi0, ZERO), "lnΓ(2)+lnΓ(9/2)-lnΓ(9/2)-lnΓ(2) cancels"))
    if sign.verified:
        lift = verify_monotone_bound(Interval(0), sign, "nondecreasing", FULL, claim_id="Φ >= 0",
                                     note="Φ(α) >= Φ(0) = 0, i.e. T >= 2(90+19α)/(α+9)")
        parts.append(lift)
    ov = verify_overlap(pf.f_small, _f_from_phi, FULL, cfg=cfg, claim_id="f = 2e^Φ/(α+9)")
    parts.append(ov)
    return combine("C05", Kind.SIGN, FULL, parts, checks, cfg=cfg,
                   note="lower bound T >= (90+19α)·2/(α+9) on [0, 2]")


def _t_via_f(a):
    return 2 * (a + 2) * (90 + 19 * a) / ((a + 9) * pf.f_cap(a))


def _c06(cfg, deps):
    ov = verify_overlap(pf.t_cap, _t_via_f, FULL, cfg=cfg, claim_id="T = 2(α+2)(90+19α)/((α+9)F)")
    return combine("C06", Kind.COMPOSE, FULL, [ov], cfg=cfg,
                   note="F >= 2 (C03) gives T <= (90+19α)(α+2)/(α+9) on [0, 2]")


def _g_exact(t: RationalFn) -> RationalFn:
    return pf.A_COEF * t * t + pf.B_COEF * t + RationalFn(X + 2)


_DEN79 = (X + 7) * (X + 9) ** 2


def _c07(cfg, deps):
    g = _g_exact(RationalFn(2 * (90 + 19 * X), X + 9))
    want = RationalFn(X * X * pf.CUBIC, 300 * _DEN79)
    ident = _check("g at the lower T-bound", identity_equal(g, want),
                   "= α²(95α³+237α²-6300α-26568)/(300(α+7)(α+9)²)")
    s1, n1 = _sign(pf.CUBIC, FULL, -1, "cubic < 0")
    s2, n2 = _sign(_DEN79, FULL, 1, "(α+7)(α+9)² > 0")
    return _exact("C07", FULL, [ident, s1, s2], n1 + n2, cfg, note="g_α(2(90+19α)/(α+9)) < 0 on (0, 2]")


def _c08(cfg, deps):
    g = _g_exact(RationalFn((90 + 19 * X) * (X + 2), X + 9))
    want = RationalFn(-(X * X * pf.QUARTIC), 1200 * _DEN79)
    checks = [_check("g at the upper T-bound", identity_equal(g, want),
                     "= -α²(893α⁴+10367α³+36800α²+32472α-13608)/(1200(α+7)(α+9)²)")]
    n = 0
    s, k = _sign(pf.QUARTIC.derivative(), FULL, 1, "quartic' > 0")
    checks.append(s)
    n += k
    brackets = sturm_isolate(pf.QUARTIC, FULL)
    n += 1
    checks.append(_check("one root in [0, 2]", len(brackets) == 1, f"{len(brackets)} bracket(s)"))
    b = pf.alpha_star_bracket()
    checks.append(_check("bracket width <= 1e-10", b.width <= TIGHT, f"[{fmt_q(b.lo)}, {fmt_q(b.hi)}]"))
    lo_val = pf.QUARTIC.eval_exact(Fraction(3, 10))
    hi_val = pf.QUARTIC.eval_exact(Fraction(31, 100))
    checks.append(_check("quartic(3/10) < 0 < quartic(31/100)", lo_val < 0 < hi_val,
                         f"{lo_val} and {hi_val}"))
    checks.append(_check("bracket inside [3/10, 31/100]", Fraction(3, 10) <= b.lo and b.hi <= Fraction(31, 100)))
    closed = pf.alpha_star_closed_form()
    checks.append(_check("closed form meets the bracket", closed.overlaps(Interval(b.lo, b.hi)),
                         f"closed form {closed!r}"))
    s, k = _sign(pf.QUARTIC, (b.hi, TWO), 1, "quartic > 0 on [α*ub, 2]")
    checks.append(s)
    n += k
    s, k = _sign(_DEN79, FULL, 1, "(α+7)(α+9)² > 0")
    checks.append(s)
    n += k
    return _exact("C08", FULL, checks, n, cfg, note=f"g_α((90+19α)(α+2)/(α+9)) < 0 on [α*ub, 2], α*ub = {fmt_q(b.hi)}")


def _c09(cfg, deps):
    disc = pf.B_COEF * pf.B_COEF - 4 * pf.A_COEF * RationalFn(X + 2)
    want = RationalFn(X * X * pf.RADICAND, 14400 * (X + 7) ** 2)
    checks = [_check("discriminant = α²Q/(14400(α+7)²)", identity_equal(disc, want))]
    s1, n1 = _sign(pf.RADICAND, FULL, 1, "Q > 0")
    num_a = (14 - 3 * X) * (3 + X)
    s2, n2 = _sign(num_a, FULL, 1, "(14-3α)(3+α) > 0")
    s3, n3 = _sign(7 + X, FULL, 1, "7+α > 0")
    checks += [s1, s2, s3]
    return _exact("C09", FULL, checks, n1 + n2 + n3, cfg, note="b² - 4a(α+2) >= 0 and a > 0 on [0, 2]")


def _c10(cfg, deps):
    s, n = _sign(pf.RADICAND, FULL, 1, "α⁴-6α³+25α²+1104α+2944 > 0")
    return _exact("C10", FULL, [s], n, cfg)


# ---------------------------------------------------------------------------
# Condition 2 near 0: the chain f' <= f'(0) < h'(0) <= h'
# ---------------------------------------------------------------------------


def _c11(cfg, deps):
    q = Fraction(2, 9)
    f0, h0 = pf.fh_pair(0)
    checks = [
        _check("f(0) ∋ 2/9", _contains_q(f0, q) and _width_le(f0, TIGHT), repr(f0)),
        _check("h(0) ∋ 2/9", _contains_q(h0, q) and _width_le(h0, TIGHT), repr(h0)),
        _check("f(0) = T(0)/90", pf.t_cap(0).overlaps(90 * f0)),
        _check("discriminant(0) = 0",
               (pf.B_COEF * pf.B_COEF - 4 * pf.A_COEF * RationalFn(X + 2)).eval_exact(0) == 0),
        _check("literal h(0) ∋ 2/9", _contains_q(pf.h_literal(0), q)),
    ]
    return combine("C11", Kind.COMPOSE, (ZERO, ZERO), [], checks, cfg=cfg, note="f(0) = h(0) = 2/9")


def _c12(cfg, deps):
    fp = pf.f_prime(0)
    exact = pf.fprime0(HIGH)
    sign = verify_sign(lambda a: F083 - pf.f_prime(a), (ZERO, ZERO), Target.POSITIVE, cfg,
                       claim_id="f'(0) < 0.083")
    pos = verify_sign(pf.f_prime, (ZERO, ZERO), Target.POSITIVE, cfg, claim_id="f'(0) > 0")
    checks = [
        _check("f'(0) ∋ 671/2835 - (2/9)ln 2", fp.contains(exact), f"{fp!r} against {exact.floats()}"),
        _check("width <= 1e-10", _width_le(fp, TIGHT)),
    ]
    return combine("C12", Kind.SIGN, (ZERO, ZERO), [sign, pos], checks, cfg=cfg,
                   note=f"f'(0) enclosure {list(fp.floats())}")


def _c13(cfg, deps):
    ov = verify_overlap(pf.r_fn, pf.s_fn, (ZERO, ZERO), samples=1, cfg=cfg, claim_id="r(0) ~ s(0)")
    r0, s0 = pf.r_fn(0), pf.s_fn(0)
    checks = [_check("widths <= 1e-10", _width_le(r0, TIGHT) and _width_le(s0, TIGHT), f"{r0!r}, {s0!r}")]
    return combine("C13", Kind.OVERLAP, (ZERO, ZERO), [ov], checks, cfg=cfg, semantics="consistency",
                   note="r(0) = f'(0)/f(0) = s(0) since f(0) = 2/9")


def _c14(cfg, deps):
    ub = alpha_star_ub()
    sign = verify_sign(lambda a: pf.s_prime(a) - pf.r_prime(a), (ZERO, ub), Target.POSITIVE, cfg,
                       claim_id="s' - r' > 0")
    rc = pf.r_prime_constant(ub)
    sp0 = pf.s_prime(0)
    checks = [
        _check("r' constant < -0.1795", rc.hi < R_CONST_BOUND, repr(rc)),
        _check("s'(0) > -0.1447", sp0.lo > S_PRIME_BOUND, repr(sp0)),
        _check("s' increasing", True, "s' = c/(α+2)² with c < 0"),
    ]
    ln2 = Interval(2).log()
    checks.append(_check("630 ln 2 - 671 < 0", (630 * ln2 - 671).hi < 0))
    return combine("C14", Kind.SIGN, (ZERO, ub), [sign], checks, cfg=cfg,
                   note=f"r' <= s' on [0, {fmt_q(ub)}]")


def _curv_b(a):
    return pf.h_curvature(a)[2]


def _x_term(a):
    return pf.CURV_P.coeffs[0] * pf.x_fn(a) + pf.CURV_R.coeffs[0]


def _c15(cfg, deps):
    ub = alpha_star_ub()
    checks = [
        _check("h'' = -20A/B identically", pf.curvature_identity_holds(),
               "exact in Q(α)[sqrt(Q)] with the corrected α⁹, α¹⁰ coefficients 2306391, 215061"),
        _check("typeset table fails the identity", not pf.curvature_identity_holds(pf.CURV_P_PRINTED),
               "230639 and 21506 as typeset do not reproduce h''"),
        _check("x-group coefficients > 0", all(c > 0 for c in pf.CURV_P.coeffs)),
        _check("other coefficients > 0 except α⁰, α¹¹, α¹²", all(c > 0 for c in pf.CURV_R.coeffs[1:11])),
    ]
    s, _ = _sign(IntPoly((234441, -9861)), FULL, 1, "234441 - 9861α > 0")
    checks.append(s)
    b_neg = verify_sign(_curv_b, (ZERO, ub), Target.NEGATIVE, cfg, claim_id="B < 0")
    xt = verify_sign(_x_term, (ZERO, ub), Target.POSITIVE, cfg, claim_id="1171994600448x - 8833393336320 > 0")
    return combine("C15", Kind.COMPOSE, (ZERO, ub), [b_neg, xt], checks, cfg=cfg,
                   note=f"A > 0 > B, so h'' > 0 on [0, {fmt_q(ub)}]")


def _c16(cfg, deps):
    sign = verify_sign(lambda a: pf.h_prime(a) - F083, (ZERO, ZERO), Target.POSITIVE, cfg,
                       claim_id="h'(0) > 0.083")
    return combine("C16", Kind.SIGN, (ZERO, ZERO), [sign], cfg=cfg,
                   note=f"h'(0) enclosure {list(pf.h_prime(0).floats())}")


C17_DEPS = ("C05", "C06", "C07", "C08", "C09", "C10", "C11", "C12", "C13", "C14", "C15", "C16")


def _c17(cfg, deps):
    ub = alpha_star_ub()
    lift_rs = verify_monotone_bound(Interval(0), deps["C14"], "nondecreasing", (ZERO, ub),
                                    claim_id="s - r >= 0", note="from r(0) = s(0) and s' > r'")
    lift_h = verify_monotone_bound(Interval(0), deps["C15"], "nondecreasing", (ZERO, ub),
                                   claim_id="h' - h'(0) >= 0", note="from h'' > 0")
    fp0 = pf.f_prime(0)
    hp0 = pf.h_prime(0)
    checks = [_check("upper f'(0) < 0.083 < lower h'(0)", fp0.hi < F083 < hp0.lo,
                     f"{fp0.hi!r} < 0.083 < {hp0.lo!r}")]
    return combine(
        "C17", Kind.COMPOSE, (ZERO, ub), [lift_rs, lift_h], checks, cfg=cfg,
        note=("f' = f r <= f s = f'(0)·2/F <= f'(0) < h'(0) <= h', so f < h on (0, α*ub]; "
              "with T >= its lower bound (C05) where g < 0 (C07), T lies strictly between the roots"),
    )


def _c18(cfg, deps):
    return combine(
        "C18", Kind.COMPOSE, (alpha_star_ub(), TWO), [], [], cfg=cfg,
        note="a > 0 and g < 0 at both T-bounds, and T lies between them, so g(T) < 0",
    )


# ---------------------------------------------------------------------------
# Redundant end-to-end check
# ---------------------------------------------------------------------------


def _cond1_gap(a):
    return pf.mu(2, a) - pf.lambda_cap(a)


def _c20(cfg, deps):
    dom = (cfg.delta, TWO)
    c1 = verify_sign(_cond1_gap, dom, Target.POSITIVE, cfg, mean_value=True, claim_id="mu_2 - Λ > 0")
    c2 = verify_sign(pf.g_at_T, dom, Target.NEGATIVE, cfg, mean_value=True, claim_id="g(T) < 0")
    return combine("C20", Kind.SIGN, dom, [c1, c2], cfg=cfg,
                   note=f"both conditions by direct bisection on [{fmt_q(cfg.delta)}, 2]")


# ---------------------------------------------------------------------------


def build_registry() -> list[Claim]:
    ub = alpha_star_ub()
    early = (ZERO, ub)
    late = (ub, TWO)
    point = (ZERO, ZERO)
    rows = [
        ("C01", Kind.OVERLAP, "mu_2(α) = Γ(α+6)/120", FULL, (), "definitions of mu_n and Λ substituted", _c01),
        ("C02", Kind.OVERLAP, "32Γ(α/2+2)Γ(α+9/2)/(Γ(α+6)Γ(α/2+3/2)) = 4(α+7)/((α+4)F(α))", FULL, (),
         "Gamma quotient rewritten through F", _c02),
        ("C03", Kind.SIGN, "F'/F > 0 on [0, 2], so F >= F(0) = 2", FULL, (), "F is increasing", _c03),
        ("C04", Kind.EXACT_POLY,
         "(α+9)(α+7)(α+5)(α+4) - 2(α+7)(90+19α) = α(α+7)(α²+18α+63), cofactor > 0", FULL, (),
         "elementary polynomial inequality", _c04),
        ("C05", Kind.SIGN, "Φ' > 0 on [0, 2] and Φ(0) = 0, so T >= 2(90+19α)/(α+9)", FULL, (),
         "lower bound for T", _c05),
        ("C06", Kind.COMPOSE, "T <= (90+19α)(α+2)/(α+9) on [0, 2]", FULL, ("C03",), "upper bound for T", _c06),
        ("C07", Kind.EXACT_POLY, "g_α(2(90+19α)/(α+9)) = α²·cubic/(300(α+7)(α+9)²), cubic < 0", FULL, (),
         "g at the lower T-bound", _c07),
        ("C08", Kind.EXACT_POLY,
         "g_α((90+19α)(α+2)/(α+9)) = -α²·quartic/(1200(α+7)(α+9)²); quartic has one root α* and is > 0 on [α*ub, 2]",
         FULL, (), "g at the upper T-bound and α*", _c08),
        ("C09", Kind.EXACT_POLY, "b² - 4a(α+2) >= 0 and a > 0 on [0, 2]", FULL, (), "real roots of g", _c09),
        ("C10", Kind.EXACT_POLY, "α⁴-6α³+25α²+1104α+2944 > 0 on [0, 2]", FULL, (), "radicand of x(α)", _c10),
        ("C11", Kind.COMPOSE, "f(0) = h(0) = 2/9", point, ("C09",), "common value at α = 0", _c11),
        ("C12", Kind.SIGN, "f'(0) = 671/2835 - (2/9)ln 2 < 0.083", point, (), "value of f'(0)", _c12),
        ("C13", Kind.OVERLAP, "r(0) = s(0)", point, (), "anchor for r <= s", _c13),
        ("C14", Kind.SIGN, "s' - r' > 0 on [0, α*ub]; r' constant < -0.1795; s'(0) > -0.1447", early, ("C08",),
         "derivative comparison r' <= s'", _c14),
        ("C15", Kind.COMPOSE, "h'' > 0 on [0, α*ub] from A > 0 > B", early, ("C08", "C10"),
         "convexity of h", _c15),
        ("C16", Kind.SIGN, "h'(0) > 0.083", point, (), "value of h'(0)", _c16),
        ("C17", Kind.COMPOSE, "g_α(T(α)) < 0 on (0, α*ub]", early, C17_DEPS,
         "chain f' <= f'(0) < h'(0) <= h'", _c17),
        ("C18", Kind.COMPOSE, "g_α(T(α)) < 0 on [α*ub, 2]", late, ("C05", "C06", "C07", "C08", "C09"),
         "g negative between the T-bounds", _c18),
        ("C19", Kind.COMPOSE, "mu_2(α) > Λ(α) on (0, 2]", FULL, ("C01", "C02", "C03", "C04"),
         "first condition", _c19),
        ("C20", Kind.SIGN, "mu_2 - Λ > 0 and g_α(T(α)) < 0 on [delta, 2] by direct bisection", (Fraction(1, 10000), TWO),
         (), "redundant end-to-end check", _c20),
    ]
    return [Claim(cid, kind, stmt, (Fraction(d[0]), Fraction(d[1])), deps, anchor, fn)
            for cid, kind, stmt, d, deps, anchor, fn in rows]
