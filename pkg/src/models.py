"""Data models for check reports."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class ResultStatus(Enum):
    """Status of a single check."""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass
class CheckResult:
    """Result of a single check execution."""

    check_id: str
    description: str
    status: ResultStatus
    detail: str = ""
    witness: Optional[Any] = None
    duration_seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "id": self.check_id,
            "description": self.description,
            "status": self.status.value,
        }
        if self.detail:
            payload["detail"] = self.detail
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


@dataclass
class Report:
    """All check results of one command invocation."""

    command: str
    argv: list[str] = field(default_factory=list)
    version: str = ""
    checks: list[CheckResult] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    duration_seconds: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(c.status is not ResultStatus.FAIL for c in self.checks)

    def counts(self) -> dict[str, int]:
        totals = {status.value: 0 for status in ResultStatus}
        for c in self.checks:
            totals[c.status.value] += 1
        return totals

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.check_id)

    def to_dict(self) -> dict[str, Any]:
        """Structured form; timings are left out so identical runs serialize identically."""
        payload: dict[str, Any] = {
            "command": self.command,
            "argv": list(self.argv),
            "version": self.version,
            "passed": self.all_passed,
            "counts": self.counts(),
            "checks": [c.to_dict() for c in self.sorted_checks()],
        }
        if self.summary:
            payload["summary"] = self.summary
        return payload
