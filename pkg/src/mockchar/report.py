"""Verification report records and the JSON-lines sink.

One record per check, schema versioned.  Two fields are volatile (timestamp,
wall_ms); everything else is deterministic for a fixed seed, so reports can be
diffed across runs and parallelism degrees after dropping the volatile keys.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

SCHEMA = "mockchar-report/1"

# stripped before byte-comparison in the determinism contract
VOLATILE_FIELDS = ("timestamp", "wall_ms")

PASS = "pass"
FAIL = "fail"
SKIP_SINGULAR = "skip-singular"


def _jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    anchor: str
    params: dict = field(default_factory=dict)
    lhs: complex | None = None
    rhs: complex | None = None
    abs_err: float | None = None
    rel_err: float | None = None
    tolerance: float = 0.0
    status: str = PASS
    wall_ms: float = 0.0
    note: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIP_SINGULAR):
            raise ValueError("bad status %r" % (self.status,))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_record(self, volatile: bool = True) -> dict:
        rec = {
            "schema": SCHEMA,
            "check_id": self.check_id,
            "anchor": self.anchor,
            "params": _jsonable(self.params),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "status": self.status,
            "note": self.note,
        }
        if volatile:
            rec["wall_ms"] = self.wall_ms
            rec["timestamp"] = datetime.now(timezone.utc).isoformat()
        return rec

    def to_json_line(self, volatile: bool = True) -> str:
        return json.dumps(self.to_record(volatile), sort_keys=True, separators=(",", ":"))


def make_report(
    check_id: str,
    anchor: str,
    err: float,
    tolerance: float,
    params: dict | None = None,
    lhs: complex | None = None,
    rhs: complex | None = None,
    abs_err: float | None = None,
    wall_ms: float = 0.0,
    note: str = "",
) -> VerificationReport:
    """Report with status derived from err <= tolerance."""
    return VerificationReport(
        check_id=check_id,
        anchor=anchor,
        params=dict(params or {}),
        lhs=lhs,
        rhs=rhs,
        abs_err=abs_err if abs_err is not None else err,
        rel_err=err,
        tolerance=tolerance,
        status=PASS if err <= tolerance else FAIL,
        wall_ms=wall_ms,
        note=note,
    )


def skip_report(
    check_id: str,
    anchor: str,
    reason: str,
    tolerance: float,
    params: dict | None = None,
    wall_ms: float = 0.0,
) -> VerificationReport:
    """skip-singular record; only for documented pole/singular-entry conditions."""
    return VerificationReport(
        check_id=check_id,
        anchor=anchor,
        params=dict(params or {}),
        tolerance=tolerance,
        status=SKIP_SINGULAR,
        wall_ms=wall_ms,
        note=reason,
    )


def write_jsonl(reports, fh, volatile: bool = True) -> None:
    for rep in reports:
        fh.write(rep.to_json_line(volatile))
        fh.write("\n")


def strip_volatile(line: str) -> str:
    """Canonical form of a report line for byte-comparison across runs."""
    rec = json.loads(line)
    for key in VOLATILE_FIELDS:
        rec.pop(key, None)
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def summary_lines(reports) -> list:
    """Human summary: one line per check plus a totals line."""
    lines = []
    n_pass = n_fail = n_skip = 0
    for rep in reports:
        if rep.status == PASS:
            n_pass += 1
        elif rep.status == FAIL:
            n_fail += 1
        else:
            n_skip += 1
        err = "-" if rep.rel_err is None else "%.3e" % rep.rel_err
        lines.append(
            "%-8s %-44s err=%-10s tol=%g" % (rep.status, rep.check_id, err, rep.tolerance)
        )
    lines.append("total: %d pass, %d fail, %d skip-singular" % (n_pass, n_fail, n_skip))
    return lines
