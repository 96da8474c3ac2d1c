"""Verification records and reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import mpmath as mp

STATUSES = ("pass", "fail", "exploratory", "indeterminate")


def _num(v):
    """JSON-friendly rendering of a number (string keeps all digits)."""
    if v is None:
        return None
    if isinstance(v, (mp.mpc, complex)) and mp.im(v) != 0:
        return {"re": mp.nstr(mp.re(v), 20), "im": mp.nstr(mp.im(v), 20)}
    if isinstance(v, (mp.mpf, mp.mpc, float, int)):
        return mp.nstr(mp.re(mp.mpmathify(v)), 20)
    return str(v)


@dataclass
class IdentityResult:
    """One checked identity.  ``status`` is ``pass`` iff ``abs_delta <= tolerance``
    unless the case is marked exploratory or indeterminate."""

    id: str
    reference: str
    parameters: dict
    lhs: object
    rhs: object
    abs_delta: object
    tolerance: object
    status: str
    seconds: float = 0.0
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs", "abs_delta", "tolerance"):
            d[key] = _num(d[key])
        d["parameters"] = {k: _num(v) if not isinstance(v, str) else v for k, v in self.parameters.items()}
        d["seconds"] = round(self.seconds, 3)
        return d


def make_result(
    id: str,
    reference: str,
    lhs,
    rhs,
    tolerance,
    parameters: dict | None = None,
    exploratory: bool = False,
    seconds: float = 0.0,
    note: str = "",
    abs_delta=None,
) -> IdentityResult:
    if abs_delta is None:
        abs_delta = abs(mp.mpmathify(lhs) - mp.mpmathify(rhs)) if lhs is not None and rhs is not None else None
    if abs_delta is None or (isinstance(abs_delta, (mp.mpf, float)) and mp.isnan(abs_delta)):
        status = "indeterminate"
    elif exploratory:
        status = "exploratory"
    else:
        status = "pass" if abs_delta <= tolerance else "fail"
    return IdentityResult(id, reference, parameters or {}, lhs, rhs, abs_delta, tolerance, status, seconds, note)


@dataclass
class VerificationReport:
    rows: list = field(default_factory=list)

    def add(self, row: IdentityResult) -> IdentityResult:
        self.rows.append(row)
        return row

    def extend(self, other: "VerificationReport"):
        self.rows.extend(other.rows)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.rows)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for r in self.rows:
            out[r.status] += 1
        return out

    def sorted(self) -> "VerificationReport":
        return VerificationReport(sorted(self.rows, key=lambda r: r.id))

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in self.rows) + ("\n" if self.rows else "")

    def table(self) -> str:
        lines = [f"{'id':40s} {'status':13s} {'|delta|':>10s} {'tol':>9s} {'sec':>7s}"]
        for r in self.rows:
            d = mp.nstr(r.abs_delta, 3) if r.abs_delta is not None else "-"
            lines.append(f"{r.id:40s} {r.status:13s} {d:>10s} {mp.nstr(r.tolerance, 2):>9s} {r.seconds:7.2f}")
        c = self.counts()
        lines.append(", ".join(f"{k}={v}" for k, v in c.items()))
        return "\n".join(lines)


def timed(fn: Callable, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t
