"""Acceptance gate: one test per primary criterion, each printing PASS/FAIL.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
printed even when output capture is on.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest
from mpmath import mp

from fraclap_proof import paperfn as pf
from fraclap_proof.claims import alpha_star_ub
from fraclap_proof.exactpoly import RationalFn, X
from fraclap_proof.interval import Interval, PrecisionMode
from fraclap_proof.prover import ProverConfig, Status, run, verify_overlap
from fraclap_proof.specfun import digamma, gamma, lngamma, trigamma

from conftest import encloses, oracle, sample_in

EXT256 = PrecisionMode.extended(256)
TIGHT = Fraction(1, 10**10)


def verdict(capsys, name: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def _cli_json() -> tuple[int, str, float]:
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "fraclap_proof", "verify", "--all", "--format", "json"],
        capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, time.perf_counter() - t0


@pytest.fixture(scope="module")
def cli_runs():
    return [_cli_json(), _cli_json()]


def _strip_elapsed(node):
    if isinstance(node, dict):
        return {k: _strip_elapsed(v) for k, v in node.items() if k != "elapsed_ms"}
    if isinstance(node, list):
        return [_strip_elapsed(v) for v in node]
    return node


def test_full_suite(cli_runs, capsys):
    code, out, secs = cli_runs[0]
    s = json.loads(out)["summary"]
    ok = code == 0 and s["verified"] == 20 and s["failed"] == 0 and s["undecided"] == 0 and secs < 120
    verdict(capsys, "full suite", ok, f"{s['verified']}/20 verified, exit {code}, {secs:.1f} s")


def test_alpha_star(capsys):
    closed, bracket = pf.alpha_star()
    q = pf.QUARTIC
    lo_val, hi_val = q.eval_exact(Fraction(3, 10)), q.eval_exact(Fraction(31, 100))
    c_lo, c_hi = closed.fractions()
    ok = (
        bracket.width <= TIGHT
        and closed.overlaps(Interval(bracket.lo, bracket.hi))
        and Fraction(3, 10) <= bracket.lo and bracket.hi <= Fraction(31, 100)
        and Fraction(3, 10) <= c_lo and c_hi <= Fraction(31, 100)
        and lo_val < 0 < hi_val
        and q.eval_exact(bracket.lo) < 0 < q.eval_exact(bracket.hi)
    )
    verdict(capsys, "alpha*", ok,
            f"bracket [{float(bracket.lo):.13f}, {float(bracket.hi):.13f}] width {float(bracket.width):.1e}, "
            f"closed form {closed.floats()}, quartic(3/10)={lo_val} < 0 < quartic(31/100)={hi_val}")


def test_fprime0(capsys):
    want = oracle(lambda: mp.mpf(671) / 2835 - mp.mpf(2) / 9 * mp.log(2), bits=400)
    ok, parts = True, []
    for mode in (PrecisionMode(), EXT256):
        fp = pf.f_prime(Interval(0, 0, mode))
        lo, hi = fp.fractions()
        ok = ok and encloses(fp, want) and hi - lo <= TIGHT and hi < Fraction(83, 1000)
        parts.append(f"{mode}: {fp.floats()} width {float(hi - lo):.1e}")
    verdict(capsys, "f'(0)", ok, "; ".join(parts) + "; upper < 0.083")


def test_sprime0(capsys):
    sp = pf.s_prime(0)
    want = oracle(lambda: (-671 + 630 * mp.log(2)) / 405 / 4)
    ok = encloses(sp, want) and sp.lo > -0.1447
    verdict(capsys, "s'(0)", ok, f"enclosure {sp.floats()}, lower bound > -0.1447")


def test_rprime_constant(capsys):
    ub = alpha_star_ub()
    rc = pf.r_prime_constant(ub)
    want = oracle(
        lambda u: mp.psi(1, 2) / 4 + mp.psi(1, mp.mpf(9) / 2) - mp.psi(1, u / 2 + mp.mpf(11) / 2) / 4 - mp.psi(1, u + 2),
        ub,
    )
    ok = encloses(rc, want) and rc.hi < -0.1795
    verdict(capsys, "r' constant", ok, f"enclosure {rc.floats()} at α*ub = {ub}, upper bound < -0.1795")


def _tight_contains(x: Interval, q: Fraction) -> bool:
    lo, hi = x.fractions()
    return lo <= q <= hi and hi - lo <= TIGHT


def test_boundary_equalities(capsys):
    g0 = pf.A_COEF.eval_exact(0) * 400 + pf.B_COEF.eval_exact(0) * 20 + 2
    disc = (pf.B_COEF * pf.B_COEF - 4 * pf.A_COEF * RationalFn(X + 2)).eval_exact(0)
    f0, h0 = pf.fh_pair(0)
    items = {
        "g_0(20) = 0": g0 == 0,
        "discriminant(0) = 0": disc == 0,
        "f(0) = 2/9": _tight_contains(f0, Fraction(2, 9)),
        "h(0) = 2/9": _tight_contains(h0, Fraction(2, 9)),
        "mu_2(0) = 1": _tight_contains(pf.mu(2, 0), Fraction(1)),
        "Lambda(0) = 1": _tight_contains(pf.lambda_cap(0), Fraction(1)),
        "F(0) = 2": _tight_contains(pf.f_cap(0), Fraction(2)),
        "T(0) = 20": _tight_contains(pf.t_cap(0), Fraction(20)),
    }
    bad = [k for k, v in items.items() if not v]
    verdict(capsys, "boundary equalities", not bad, "all exact" if not bad else f"failed: {bad}")


def _cbrt(v):
    return mp.sign(v) * mp.cbrt(abs(v))


def test_soundness_suite(capsys):
    rng = random.Random(7)
    n = 10_000

    def span(lo_exp=-6, hi_exp=6, positive=False):
        s = 2.0 ** rng.randint(lo_exp, hi_exp)
        a = rng.uniform(1e-3 if positive else -1, 1) * s
        return a, a + rng.random() * s * rng.choice((0.0, 1e-6, 1e-2, 1.0))

    unary = {
        "neg": (lambda x: -x, lambda v: -v, span),
        "abs": (lambda x: x.abs(), abs, span),
        "sqrt": (lambda x: x.sqrt(), mp.sqrt, lambda: span(positive=True)),
        "cbrt": (lambda x: x.cbrt(), _cbrt, span),
        "log": (lambda x: x.log(), mp.log, lambda: span(positive=True)),
        "exp": (lambda x: x.exp(), mp.exp, lambda: span(-6, 5)),
        "pow": (lambda x: x.pow_int(5), lambda v: v**5, span),
        "lngamma": (lngamma, mp.loggamma, lambda: _arg(rng)),
        "gamma": (gamma, mp.gamma, lambda: _arg(rng)),
        "digamma": (digamma, mp.digamma, lambda: _arg(rng)),
        "trigamma": (trigamma, lambda v: mp.polygamma(1, v), lambda: _arg(rng)),
    }
    binary = {
        "add": (lambda x, y: x + y, lambda u, v: u + v),
        "sub": (lambda x, y: x - y, lambda u, v: u - v),
        "mul": (lambda x, y: x * y, lambda u, v: u * v),
        "div": (lambda x, y: x / y, lambda u, v: u / v),
    }
    violations = {}
    for name, (op, ref, gen) in unary.items():
        bad = 0
        for _ in range(n):
            a, b = gen()
            p = sample_in(rng, a, b)
            bad += not encloses(op(Interval(a, b)), oracle(ref, p))
        violations[name] = bad
    for name, (op, ref) in binary.items():
        bad = 0
        for _ in range(n):
            a, b = span()
            c, d = span(positive=True) if name == "div" else span()
            p, q = sample_in(rng, a, b), sample_in(rng, c, d)
            bad += not encloses(op(Interval(a, b), Interval(c, d)), oracle(ref, p, q))
        violations[name] = bad
    total = sum(violations.values())
    verdict(capsys, "soundness suite", total == 0,
            f"{len(violations)} operations x {n} samples, {total} violations")


def _arg(rng):
    a = rng.uniform(0.5, 12.0)
    return a, a + rng.random() * rng.choice((0.0, 1e-6, 1e-2, 1.0))


def test_identity_suite(capsys):
    full = (0, 2)
    overlaps = {
        "C01": verify_overlap(lambda a: pf.mu(2, a), lambda a: gamma(a + 6) / 120, full, depth=6),
        "C02": verify_overlap(
            lambda a: 32 * (lngamma(a / 2 + 2) + lngamma(a + Fraction(9, 2)) - lngamma(a + 6)
                            - lngamma(a / 2 + Fraction(3, 2))).exp(),
            lambda a: 4 * (a + 7) / (a + 4) / pf.f_cap(a), full, depth=6),
        "C06": verify_overlap(
            pf.t_cap, lambda a: 2 * (a + 2) * (90 + 19 * a) / ((a + 9) * pf.f_cap(a)), full, depth=6),
    }
    certs = {c.claim_id: c for c in run(["C01", "C02", "C04", "C06", "C07", "C08", "C09"])}
    exact_ok = all(certs[c].status is Status.VERIFIED for c in ("C04", "C07", "C08", "C09"))
    ident_checks = all(
        ch.status is Status.VERIFIED for c in ("C04", "C07", "C08", "C09") for ch in certs[c].checks
    )
    ok = (
        all(c.verified and c.max_depth_used == 6 for c in overlaps.values())
        and all(certs[c].verified for c in ("C01", "C02", "C06"))
        and exact_ok and ident_checks
    )
    verdict(capsys, "identity suite", ok,
            "C01/C02/C06 overlaps at depth 6, C04/C07/C08/C09 exact identities verified")


def test_determinism(cli_runs, capsys):
    (c1, out1, _), (c2, out2, _) = cli_runs
    a = json.dumps(_strip_elapsed(json.loads(out1)), indent=2)
    b = json.dumps(_strip_elapsed(json.loads(out2)), indent=2)
    verdict(capsys, "determinism", c1 == c2 == 0 and a == b,
            f"two JSON runs identical after removing elapsed_ms ({len(a)} bytes)")


def test_monotone_effort(capsys):
    base = ProverConfig()
    heavy = ProverConfig(max_depth=2 * base.max_depth, schedule=(EXT256,))
    t0 = time.perf_counter()
    certs = run(cfg=heavy)
    secs = time.perf_counter() - t0
    bad = [c.claim_id for c in certs if c.status is not Status.VERIFIED]
    verdict(capsys, "monotone effort", not bad and len(certs) == 20,
            f"max_depth {heavy.max_depth}, schedule {[str(m) for m in heavy.schedule]}: "
            f"{20 - len(bad)}/20 verified in {secs:.1f} s" + (f", not verified: {bad}" if bad else ""))
