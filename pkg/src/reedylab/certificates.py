"""Certificate and check records shared by all certification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import CandidateSpaceExceeded, SizeBudget

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Check:
    id: str
    status: str
    count: int = 0
    witness: object = None

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status, "count": self.count}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Certificate:
    suite: str
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: "Certificate", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.id, c.status, c.count, c.witness)
            )

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_json() for c in self.checks],
            "config": self.config,
            "duration": self.duration,
        }

    def json_text(self, with_duration: bool = True) -> str:
        data = self.to_json()
        if not with_duration:
            data.pop("duration")
        return json.dumps(data, indent=2, sort_keys=True)

    def markdown(self) -> str:
        lines = [f"## suite `{self.suite}`", ""]
        lines.append("| check | status | cases | witness |")
        lines.append("|---|---|---|---|")
        for c in self.checks:
            wit = "" if c.witness is None else f"`{json.dumps(c.witness)}`"
            lines.append(f"| {c.id} | {c.status} | {c.count} | {wit} |")
        lines.append("")
        cfg = json.dumps(self.config, sort_keys=True)
        lines.append(f"config: `{cfg}`  duration: {self.duration:.3f}s")
        lines.append("")
        return "\n".join(lines)


def check_from(id: str, fn) -> Check:
    """Run fn() -> (ok: bool, count: int, witness) and wrap the outcome.

    Budget overruns surface as skipped checks, never silent truncation.
    """
    try:
        ok, count, witness = fn()
    except (SizeBudget, CandidateSpaceExceeded) as exc:
        return Check(id, SKIPPED, 0, str(exc))
    return Check(id, PASS if ok else FAIL, count, None if ok else witness)
