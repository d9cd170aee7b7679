"""Verification report records and their JSON / markdown rendering.

One record per check.  JSON output is deterministic for a fixed (config,
seed): keys sorted, fractions rendered as strings, and wall-clock timings
emitted as null unless explicitly requested (they are the only
non-reproducible field).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exact import Q

__all__ = ["VerificationReport", "render_json_lines", "render_markdown"]

STATUS_EXACT = "exact-pass"
STATUS_EVAL = "eval-pass"
STATUS_FAIL = "fail"


@dataclass
class VerificationReport:
    check: str
    n: int
    mu: object
    params: dict
    battery: str
    seed: int
    status: str
    residual_terms: int = 0
    elapsed_ms: float = 0.0
    detail: str = ""

    def passed(self):
        return self.status in (STATUS_EXACT, STATUS_EVAL)

    def sort_key(self):
        return (self.check, self.n, str(self.mu), _stable(self.params))

    def to_dict(self, with_timings=False):
        return {
            "check": self.check,
            "n": self.n,
            "mu": str(self.mu),
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
            "battery": self.battery,
            "seed": self.seed,
            "status": self.status,
            "residual_terms": self.residual_terms,
            "elapsed_ms": round(self.elapsed_ms, 3) if with_timings else None,
            "detail": self.detail,
        }


def _jsonable(v):
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _stable(params):
    return json.dumps({k: _jsonable(v) for k, v in sorted(params.items())})


def render_json_lines(reports, with_timings=False):
    rows = sorted(reports, key=VerificationReport.sort_key)
    return "\n".join(
        json.dumps(r.to_dict(with_timings), sort_keys=True, separators=(",", ":"))
        for r in rows
    )


def render_markdown(reports, with_timings=False):
    rows = sorted(reports, key=VerificationReport.sort_key)
    head = ["check", "n", "mu", "params", "status", "residuals", "detail"]
    if with_timings:
        head.insert(-1, "ms")
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for r in rows:
        cells = [
            r.check,
            str(r.n),
            str(r.mu),
            _stable(r.params),
            r.status,
            str(r.residual_terms),
        ]
        if with_timings:
            cells.append(f"{r.elapsed_ms:.1f}")
        cells.append(r.detail or "")
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines)
