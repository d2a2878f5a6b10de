"""Adaptive bisection, monotone lifting and the claim runner.

Boxes always have exact rational endpoints.  They are converted to
outward-rounded intervals only when an enclosure map is evaluated, in the
precision mode the box has reached on the escalation schedule.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .interval import (
    MACHINE,
    DualInterval,
    EmptyIntersection,
    Interval,
    IntervalError,
    PrecisionMode,
)

__all__ = [
    "Kind",
    "Status",
    "Target",
    "ProverConfig",
    "SubCheck",
    "Certificate",
    "Claim",
    "UnknownClaimId",
    "DependencyNotVerified",
    "CyclicDependencies",
    "verify_sign",
    "verify_monotone_bound",
    "verify_overlap",
    "combine",
    "claim_registry",
    "topological_order",
    "run",
    "fmt_q",
    "parse_q",
]

EnclosureMap = Callable[[Interval], Interval]


class Kind(str, Enum):
    SIGN = "SIGN"
    EXACT_POLY = "EXACT_POLY"
    OVERLAP = "OVERLAP"
    MONOTONE = "MONOTONE"
    COMPOSE = "COMPOSE"


class Status(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    UNDECIDED = "undecided"


class Target(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class UnknownClaimId(KeyError):
    pass


class DependencyNotVerified(RuntimeError):
    pass


class CyclicDependencies(ValueError):
    pass


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_q(text) -> Fraction:
    return Fraction(text)


def _fmt_interval(x: Interval) -> list[str]:
    return [repr(v) for v in x.floats()]


# ---------------------------------------------------------------------------
# Configuration and certificates
# ---------------------------------------------------------------------------


DEFAULT_SCHEDULE = (MACHINE, PrecisionMode.extended(128), PrecisionMode.extended(256))


@dataclass(frozen=True)
class ProverConfig:
    max_depth: int = 60
    delta: Fraction = Fraction(1, 10000)
    schedule: tuple[PrecisionMode, ...] = DEFAULT_SCHEDULE

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "schedule", tuple(self.schedule))
        if self.max_depth < 8:
            raise ValueError("max_depth must be at least 8")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if not self.schedule:
            raise ValueError("the precision schedule is empty")

    @classmethod
    def for_mode(cls, mode: str = "machine", prec: int = 128, **kw) -> ProverConfig:
        if mode == "machine":
            return cls(**kw)
        if mode == "extended":
            return cls(schedule=(PrecisionMode.extended(prec), PrecisionMode.extended(2 * prec)), **kw)
        raise ValueError(f"unknown mode {mode!r}")

    def to_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "delta": fmt_q(self.delta),
            "schedule": [str(m) for m in self.schedule],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> ProverConfig:
        return cls(
            max_depth=int(d["max_depth"]),
            delta=parse_q(d["delta"]),
            schedule=tuple(PrecisionMode.parse(s) for s in d["schedule"]),
        )


@dataclass(frozen=True)
class SubCheck:
    """One named step inside a certificate, with its own status."""

    name: str
    status: Status
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status.value, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: Mapping) -> SubCheck:
        return cls(d["name"], Status(d["status"]), d.get("detail", ""))


@dataclass(frozen=True)
class Certificate:
    """Verdict for one claim or engine call.

    ``semantics`` is "proof" for sign, exact and composed conclusions and
    "consistency" for overlap checks, which can only falsify an identity.
    """

    claim_id: str
    kind: Kind
    status: Status
    domain: tuple[Fraction, Fraction]
    boxes_examined: int = 0
    max_depth_used: int = 0
    semantics: str = "proof"
    precision: str = "exact"
    worst_box: tuple[Fraction, Fraction] | None = None
    witness: dict | None = None
    covered: tuple[tuple[Fraction, Fraction], ...] = ()
    checks: tuple[SubCheck, ...] = ()
    note: str = ""
    elapsed_ms: int = 0
    config: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status is Status.VERIFIED

    def with_id(self, claim_id: str, kind: Kind | None = None) -> Certificate:
        return replace(self, claim_id=claim_id, kind=kind or self.kind)


def _merge(spans: Iterable[tuple[Fraction, Fraction]]) -> tuple[tuple[Fraction, Fraction], ...]:
    out: list[list[Fraction]] = []
    for lo, hi in sorted(spans):
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((a, b) for a, b in out)


def _worse(a: Status, b: Status) -> Status:
    order = {Status.VERIFIED: 0, Status.UNDECIDED: 1, Status.FAILED: 2}
    return a if order[a] >= order[b] else b


def combine(claim_id: str, kind: Kind, domain, parts: Sequence[Certificate], checks=(), note: str = "",
            cfg: ProverConfig | None = None, semantics: str = "proof") -> Certificate:
    """Merge sub-certificates and sub-checks into one; the worst status wins."""
    status = Status.VERIFIED
    for p in parts:
        status = _worse(status, p.status)
    for c in checks:
        status = _worse(status, c.status)
    failed = next((p for p in parts if p.status is Status.FAILED), None)
    stuck = next((p for p in parts if p.status is Status.UNDECIDED), None)
    precisions = sorted({p.precision for p in parts if p.precision != "exact"})
    all_checks = tuple(checks) + tuple(
        SubCheck(p.claim_id or "sign", p.status, p.note) for p in parts if p.claim_id
    )
    return Certificate(
        claim_id=claim_id,
        kind=kind,
        status=status,
        domain=(Fraction(domain[0]), Fraction(domain[1])),
        boxes_examined=sum(p.boxes_examined for p in parts),
        max_depth_used=max((p.max_depth_used for p in parts), default=0),
        semantics=semantics,
        precision=",".join(precisions) if precisions else "exact",
        worst_box=stuck.worst_box if stuck else None,
        witness=failed.witness if failed else None,
        covered=_merge(s for p in parts for s in p.covered),
        checks=all_checks,
        note=note,
        elapsed_ms=sum(p.elapsed_ms for p in parts),
        config=cfg.to_dict() if cfg else {},
    )


# ---------------------------------------------------------------------------
# Sign verification by bisection
# ---------------------------------------------------------------------------


def _box(lo: Fraction, hi: Fraction, mode: PrecisionMode) -> Interval:
    return Interval(lo, hi, mode)


def _enclose(fn, lo: Fraction, hi: Fraction, mode: PrecisionMode, mean_value: bool) -> Interval:
    x = _box(lo, hi, mode)
    if not mean_value or lo == hi:
        return fn(x)
    d = fn(DualInterval.variable(x))
    mid = (lo + hi) / 2
    m = _box(mid, mid, mode)
    centered = fn(m) + d.der * (x - m)
    return d.val.intersect(centered)


def _resolved(lo: Fraction, hi: Fraction, mode: PrecisionMode) -> bool:
    """True when the box is too narrow to shrink further at this precision."""
    if lo == hi:
        return True
    scale = max(abs(lo), abs(hi), Fraction(1, 2**900))
    return (hi - lo) <= scale * Fraction(4, 2**mode.bits)


def _probe(fn, lo: Fraction, hi: Fraction, mode: PrecisionMode, want: int):
    """Strongest point counterexample among lo, midpoint and hi, if any.

    A point enclosure on the wrong side of 0 (or exactly 0) refutes the
    strict inequality outright.
    """
    best = None
    for q in (lo, (lo + hi) / 2, hi):
        try:
            enc = fn(_box(q, q, mode))
        except EmptyIntersection:
            raise
        except (IntervalError, ZeroDivisionError, OverflowError):
            continue
        lo_e, hi_e = enc.fractions()
        bad = -hi_e if want > 0 else lo_e  # > 0 means strictly wrong side
        if bad > 0 or (lo_e == hi_e == 0):
            if best is None or bad > best[0]:
                best = (bad, q, enc)
    return None if best is None else (best[1], best[2])


def verify_sign(
    fn: EnclosureMap,
    domain: tuple,
    target: Target | str,
    cfg: ProverConfig = ProverConfig(),
    *,
    mean_value: bool = False,
    claim_id: str = "",
    note: str = "",
) -> Certificate:
    """Certify fn > 0 (or < 0) on the closed domain by adaptive bisection.

    Each box is evaluated in the precision its branch has reached.  A box
    whose enclosure straddles 0 is split; one that cannot be split (depth
    budget or precision floor) is retried one step further along the
    schedule, and left undecided when the schedule is exhausted.  An
    enclosure strictly on the wrong side proves the claim false there; for
    a straddling box the endpoints and midpoint are also tried as points,
    so a counterexample is reported without bisecting down to it.

    With ``mean_value`` the map must also accept a DualInterval; the
    enclosure is then the natural one intersected with the centred form
    fn(m) + fn'(X)(X - m).
    """
    target = Target(target)
    want = 1 if target is Target.POSITIVE else -1
    lo0, hi0 = Fraction(domain[0]), Fraction(domain[1])
    if lo0 > hi0:
        raise ValueError("empty domain")
    t0 = time.perf_counter()
    boxes = 0
    depth_used = 0
    covered: list[tuple[Fraction, Fraction]] = []
    worst: tuple[Fraction, Fraction] | None = None
    top_mode = 0

    def failed(lo, hi, enc, mode) -> Certificate:
        witness = {"box": [fmt_q(lo), fmt_q(hi)], "value": _fmt_interval(enc), "precision": str(mode)}
        return Certificate(
            claim_id, Kind.SIGN, Status.FAILED, (lo0, hi0), boxes, depth_used,
            precision=str(cfg.schedule[top_mode]), witness=witness,
            covered=_merge(covered), note=note,
            elapsed_ms=_ms(t0), config=cfg.to_dict(),
        )

    stack = [(lo0, hi0, 0, 0)]
    while stack:
        lo, hi, depth, mi = stack.pop()
        mode = cfg.schedule[mi]
        boxes += 1
        depth_used = max(depth_used, depth)
        top_mode = max(top_mode, mi)
        try:
            enc = _enclose(fn, lo, hi, mode, mean_value)
        except EmptyIntersection:
            raise
        except (IntervalError, ZeroDivisionError, OverflowError):
            enc = None
        if enc is not None:
            if (want > 0 and enc.lo > 0) or (want < 0 and enc.hi < 0):
                covered.append((lo, hi))
                continue
            if (want > 0 and enc.hi < 0) or (want < 0 and enc.lo > 0) or (enc.is_point and enc.lo == 0):
                return failed(lo, hi, enc, mode)
            probe = _probe(fn, lo, hi, mode, want) if lo < hi else None
            if probe is not None:
                return failed(probe[0], probe[0], probe[1], mode)
        if depth < cfg.max_depth and not _resolved(lo, hi, mode):
            mid = (lo + hi) / 2
            stack.append((mid, hi, depth + 1, mi))
            stack.append((lo, mid, depth + 1, mi))
        elif mi + 1 < len(cfg.schedule):
            stack.append((lo, hi, depth, mi + 1))
        else:
            if worst is None or hi - lo > worst[1] - worst[0]:
                worst = (lo, hi)
    status = Status.VERIFIED if worst is None else Status.UNDECIDED
    return Certificate(
        claim_id, Kind.SIGN, status, (lo0, hi0), boxes, depth_used,
        precision=str(cfg.schedule[top_mode]), worst_box=worst,
        covered=_merge(covered), note=note, elapsed_ms=_ms(t0), config=cfg.to_dict(),
    )


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# Monotone lifting
# ---------------------------------------------------------------------------


def verify_monotone_bound(
    value_at_anchor: Interval,
    derivative: Certificate,
    direction: str,
    domain: tuple,
    *,
    bound: Fraction = Fraction(0),
    claim_id: str = "",
    note: str = "",
) -> Certificate:
    """Lift D(anchor) >= bound to all of the domain from the sign of D'.

    ``direction`` is "nondecreasing" (anchor at the left end, D' > 0
    certified by ``derivative``) or "nonincreasing" (anchor at the right
    end, D' < 0).  The conclusion D >= bound is non-strict and may be an
    equality at the anchor.
    """
    if direction not in ("nondecreasing", "nonincreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    if not derivative.verified:
        raise DependencyNotVerified(
            f"derivative certificate {derivative.claim_id or '(anonymous)'} is {derivative.status.value}"
        )
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    covered = derivative.covered
    spans_domain = any(a <= lo and hi <= b for a, b in covered)
    anchor_ok = value_at_anchor.fractions()[0] >= bound
    checks = (
        SubCheck("derivative covers domain", Status.VERIFIED if spans_domain else Status.UNDECIDED,
                 f"{derivative.claim_id} covers {[(fmt_q(a), fmt_q(b)) for a, b in covered]}"),
        SubCheck("anchor value", Status.VERIFIED if anchor_ok else Status.FAILED,
                 f"value {_fmt_interval(value_at_anchor)} against bound {fmt_q(bound)}"),
    )
    status = Status.VERIFIED
    for c in checks:
        status = _worse(status, c.status)
    return Certificate(
        claim_id, Kind.MONOTONE, status, (lo, hi), 1, 0,
        precision="exact", covered=((lo, hi),) if status is Status.VERIFIED else (),
        checks=checks, note=note or f"{direction} from the anchor",
    )


# ---------------------------------------------------------------------------
# Overlap (consistency) checks
# ---------------------------------------------------------------------------

OVERLAP_DEPTH = 6


def verify_overlap(
    fn1: EnclosureMap,
    fn2: EnclosureMap,
    domain: tuple,
    samples: int = 33,
    cfg: ProverConfig = ProverConfig(),
    *,
    depth: int = OVERLAP_DEPTH,
    claim_id: str = "",
    note: str = "",
) -> Certificate:
    """Check that two enclosure maps intersect on a grid and on dyadic boxes.

    Passing means the identity was not falsified; it is not a proof.
    """
    lo0, hi0 = Fraction(domain[0]), Fraction(domain[1])
    mode = cfg.schedule[0]
    t0 = time.perf_counter()
    probes: list[tuple[Fraction, Fraction, int]] = []
    if lo0 == hi0 or samples <= 1:
        probes.append((lo0, lo0, 0))
    else:
        for k in range(samples):
            p = lo0 + (hi0 - lo0) * Fraction(k, samples - 1)
            probes.append((p, p, 0))
    if lo0 < hi0:
        for level in range(depth + 1):
            n = 2**level
            w = (hi0 - lo0) / n
            probes.extend((lo0 + j * w, lo0 + (j + 1) * w, level) for j in range(n))
    for lo, hi, level in probes:
        x = _box(lo, hi, mode)
        a, b = fn1(x), fn2(x)
        if not a.overlaps(b):
            witness = {"box": [fmt_q(lo), fmt_q(hi)], "value": _fmt_interval(a), "other": _fmt_interval(b),
                       "precision": str(mode)}
            return Certificate(
                claim_id, Kind.OVERLAP, Status.FAILED, (lo0, hi0), len(probes), level,
                semantics="consistency", precision=str(mode), witness=witness, note=note,
                elapsed_ms=_ms(t0), config=cfg.to_dict(),
            )
    return Certificate(
        claim_id, Kind.OVERLAP, Status.VERIFIED, (lo0, hi0), len(probes), depth if lo0 < hi0 else 0,
        semantics="consistency", precision=str(mode), covered=((lo0, hi0),), note=note,
        elapsed_ms=_ms(t0), config=cfg.to_dict(),
    )


# ---------------------------------------------------------------------------
# Claims and the runner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    id: str
    kind: Kind
    statement: str
    domain: tuple[Fraction, Fraction]
    deps: tuple[str, ...]
    anchor: str
    evaluate: Callable[[ProverConfig, Mapping[str, Certificate]], Certificate] = field(
        repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.kind is Kind.COMPOSE and not self.deps:
            raise ValueError(f"{self.id}: a COMPOSE claim needs at least one dependency")


def claim_registry() -> list[Claim]:
    from .claims import build_registry

    return build_registry()


def topological_order(claims: Sequence[Claim]) -> list[Claim]:
    by_id = {c.id: c for c in claims}
    order: list[Claim] = []
    state: dict[str, int] = {}

    def visit(cid: str) -> None:
        s = state.get(cid, 0)
        if s == 2:
            return
        if s == 1:
            raise CyclicDependencies(f"dependency cycle through {cid}")
        state[cid] = 1
        for d in by_id[cid].deps:
            if d not in by_id:
                raise UnknownClaimId(d)
            visit(d)
        state[cid] = 2
        order.append(by_id[cid])

    for c in sorted(claims, key=lambda c: c.id):
        visit(c.id)
    return order


def run(
    ids: Iterable[str] | None = None,
    cfg: ProverConfig = ProverConfig(),
    *,
    preset: Mapping[str, Certificate] | None = None,
    registry: Sequence[Claim] | None = None,
) -> list[Certificate]:
    """Evaluate the requested claims (all if ``ids`` is None) in dependency order.

    Dependencies are evaluated too but only the requested certificates are
    returned, sorted by id.  ``preset`` substitutes ready-made certificates
    for some claims, which lets callers inject outcomes.  A claim whose
    dependencies are not all verified is reported undecided without being
    evaluated.
    """
    claims = list(registry) if registry is not None else claim_registry()
    by_id = {c.id: c for c in claims}
    wanted = sorted(by_id) if ids is None else sorted(set(ids))
    for cid in wanted:
        if cid not in by_id:
            raise UnknownClaimId(cid)
    needed: set[str] = set()
    todo = list(wanted)
    while todo:
        cid = todo.pop()
        if cid in needed:
            continue
        needed.add(cid)
        todo.extend(by_id[cid].deps)
    done: dict[str, Certificate] = {}
    preset = dict(preset or {})
    for claim in topological_order([by_id[c] for c in needed]):
        if claim.id in preset:
            done[claim.id] = preset[claim.id]
            continue
        blocked = [d for d in claim.deps if not done[d].verified]
        if blocked:
            done[claim.id] = Certificate(
                claim.id, claim.kind, Status.UNDECIDED, claim.domain,
                checks=tuple(SubCheck(d, done[d].status, "dependency") for d in blocked),
                note="dependencies not verified: " + ", ".join(blocked),
                config=cfg.to_dict(),
            )
            continue
        t0 = time.perf_counter()
        cert = claim.evaluate(cfg, done)
        done[claim.id] = replace(
            cert, claim_id=claim.id, kind=claim.kind,
            elapsed_ms=_ms(t0), config=cfg.to_dict(),
        )
    return [done[c] for c in wanted]
