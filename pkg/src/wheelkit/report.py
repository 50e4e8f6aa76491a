"""Machine-readable verification reports shared by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of an exhaustive (or explicitly sampled) identity check.

    ``cases`` counts evaluated instances; ``counterexample`` holds the first
    failing instance in a replayable, JSON-serialisable form.
    """

    check: str
    instance: str = ""
    bounds: dict[str, Any] = field(default_factory=dict)
    status: str = "pass"
    cases: int = 0
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, counterexample: dict[str, Any]) -> "Report":
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = counterexample
        return self

    def merge(self, other: "Report") -> "Report":
        """Fold ``other`` into this report, keeping the first failure."""
        self.cases += other.cases
        if not other.passed:
            self.fail({"check": other.check, **(other.counterexample or {})})
        return self

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "instance": self.instance,
            "bounds": self.bounds,
            "status": self.status,
            "cases": self.cases,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def __str__(self) -> str:
        return f"{self.check}[{self.instance}] {self.status} ({self.cases} cases)"
