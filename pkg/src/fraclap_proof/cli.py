"""Command-line front end: ``fraclap-proof verify ...``.

Exit codes: 0 when every requested claim is verified, 1 when any failed,
2 when some are undecided and none failed, 64 on a usage error.  A report
file is written only after the whole run has finished.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .prover import Certificate, ProverConfig, Status, claim_registry, fmt_q, run

__all__ = ["RunReport", "main", "build_report", "EXIT_OK", "EXIT_FAILED", "EXIT_UNDECIDED", "EXIT_USAGE"]

REPORT_VERSION = "1"
EXIT_OK, EXIT_FAILED, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 64

# Fixed key order of one claim entry in the JSON report.
CLAIM_KEYS = (
    "id", "kind", "statement", "anchor", "deps", "status", "semantics", "domain",
    "boxes_examined", "max_depth_used", "precision", "worst_box", "witness",
    "covered", "checks", "note", "elapsed_ms",
)
SUMMARY_KEYS = ("verified", "failed", "undecided", "elapsed_ms")

Runner = Callable[[Sequence[str], ProverConfig], list[Certificate]]


class UsageError(Exception):
    pass


def _span(pair) -> list[str] | None:
    return None if pair is None else [fmt_q(pair[0]), fmt_q(pair[1])]


def project(cert: Certificate, statement: str = "", anchor: str = "", deps: Sequence[str] = ()) -> dict:
    """The JSON-facing view of a certificate, keys in CLAIM_KEYS order."""
    entry = {
        "id": cert.claim_id,
        "kind": cert.kind.value,
        "statement": statement,
        "anchor": anchor,
        "deps": list(deps),
        "status": cert.status.value,
        "semantics": cert.semantics,
        "domain": _span(cert.domain),
        "boxes_examined": cert.boxes_examined,
        "max_depth_used": cert.max_depth_used,
        "precision": cert.precision,
        "worst_box": _span(cert.worst_box),
        "witness": cert.witness,
        "covered": [_span(s) for s in cert.covered],
        "checks": [c.to_dict() for c in cert.checks],
        "note": cert.note,
        "elapsed_ms": cert.elapsed_ms,
    }
    return {k: entry[k] for k in CLAIM_KEYS}


@dataclass
class RunReport:
    version: str
    config: dict
    claims: list[dict]
    summary: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.claims = [{k: c[k] for k in CLAIM_KEYS} for c in self.claims]
        counts = {s.value: 0 for s in Status}
        for c in self.claims:
            counts[c["status"]] += 1
        elapsed = self.summary.get("elapsed_ms", sum(c["elapsed_ms"] for c in self.claims))
        self.summary = {
            "verified": counts["verified"],
            "failed": counts["failed"],
            "undecided": counts["undecided"],
            "elapsed_ms": elapsed,
        }

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "claims": self.claims,
            "summary": {k: self.summary[k] for k in SUMMARY_KEYS},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        return cls(d["version"], d["config"], d["claims"], d["summary"])

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            lines.append(
                f"{c['id']}  {c['status']:<9}  {c['statement']}  [{c['anchor']}]  "
                f"boxes={c['boxes_examined']} depth={c['max_depth_used']} elapsed={c['elapsed_ms']}ms"
            )
        s = self.summary
        lines.append(
            f"summary: {s['verified']} verified, {s['failed']} failed, "
            f"{s['undecided']} undecided, {s['elapsed_ms']}ms"
        )
        return "\n".join(lines) + "\n"

    def exit_code(self) -> int:
        if self.summary["failed"]:
            return EXIT_FAILED
        if self.summary["undecided"]:
            return EXIT_UNDECIDED
        return EXIT_OK


def build_report(certs: Sequence[Certificate], cfg: ProverConfig, elapsed_ms: int) -> RunReport:
    meta = {c.id: c for c in claim_registry()}
    claims = []
    for cert in sorted(certs, key=lambda c: c.claim_id):
        m = meta.get(cert.claim_id)
        claims.append(project(cert, m.statement if m else "", m.anchor if m else "", m.deps if m else ()))
    return RunReport(REPORT_VERSION, cfg.to_dict(), claims, {"elapsed_ms": elapsed_ms})


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _positive_fraction(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError("delta must be positive")
    return q


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fraclap-proof", description="Verify the claim registry with interval arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run claims and emit a report")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="run every claim")
    which.add_argument("--claim", action="append", metavar="ID", help="claim id, repeatable")
    v.add_argument("--max-depth", type=int, default=ProverConfig.max_depth, metavar="N")
    v.add_argument("--mode", choices=("machine", "extended"), default="machine")
    v.add_argument("--prec", type=int, default=128, metavar="BITS", help="bits for --mode extended")
    v.add_argument("--delta", type=_positive_fraction, default=ProverConfig.delta, metavar="RATIONAL")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    return parser


def _config(ns) -> ProverConfig:
    if ns.max_depth < 8:
        raise UsageError("--max-depth must be at least 8")
    if ns.mode == "extended" and ns.prec < 64:
        raise UsageError("--prec must be at least 64")
    return ProverConfig.for_mode(ns.mode, ns.prec, max_depth=ns.max_depth, delta=ns.delta)


def _write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: Sequence[str] | None = None, runner: Runner | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        known = {c.id for c in claim_registry()}
        ids = sorted(known) if ns.all else sorted(set(ns.claim))
        unknown = [c for c in ids if c not in known]
        if unknown:
            raise UsageError("unknown claim id(s): " + ", ".join(unknown))
    except UsageError as e:
        print(f"fraclap-proof: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    t0 = time.perf_counter()
    certs = (runner or (lambda i, c: run(i, c)))(ids, cfg)
    report = build_report(certs, cfg, int(round((time.perf_counter() - t0) * 1000)))
    text = report.to_json() if ns.format == "json" else report.to_text()
    if ns.out:
        _write(ns.out, text)
    else:
        sys.stdout.write(text)
    return report.exit_code()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
