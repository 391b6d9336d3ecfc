"""Structured pass/fail records for identity verification."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One verified instance; lhs/rhs carry the witness values as strings."""

    instance: dict
    passed: bool
    lhs: str | None = None
    rhs: str | None = None


@dataclass(frozen=True)
class Skip:
    """One instance that could not be evaluated (degenerate denominator)."""

    instance: dict
    reason: str


@dataclass
class VerificationReport:
    """Deterministic record of a verification run.

    total = passes + failures; skipped instances are tracked separately and
    never count toward the total.
    """

    name: str = "verification"
    checks: list[Check] = field(default_factory=list)
    skipped: list[Skip] = field(default_factory=list)

    def add_check(self, instance: dict, passed: bool, lhs=None, rhs=None) -> None:
        self.checks.append(Check(dict(instance), bool(passed),
                                 None if lhs is None else str(lhs),
                                 None if rhs is None else str(rhs)))

    def add_skip(self, instance: dict, reason: str) -> None:
        self.skipped.append(Skip(dict(instance), reason))

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
        self.skipped.extend(other.skipped)

    @property
    def total(self) -> int:
        return len(self.checks)

    @property
    def passes(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failures(self) -> int:
        return self.total - self.passes

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "checks": [
                {"instance": c.instance, "pass": c.passed, "lhs": c.lhs, "rhs": c.rhs}
                for c in self.checks
            ],
            "skipped": [
                {"instance": s.instance, "reason": s.reason} for s in self.skipped
            ],
            "summary": {"total": self.total, "pass": self.passes,
                        "skipped": len(self.skipped)},
        }

    def summary_line(self) -> str:
        line = f"{self.name}: {self.total} checks, {self.passes} pass"
        if self.failures:
            line += f", {self.failures} FAIL"
        if self.skipped:
            line += f", {len(self.skipped)} skipped (degenerate)"
        return line
