"""Verification reports returned by the exact checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[Any] = None

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        if self.witness is None:
            return f"{mark} {self.name}"
        return f"{mark} {self.name}: {self.witness}"


@dataclass
class VerificationReport:
    """Ordered check results; the verdict is their conjunction."""

    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness=None) -> None:
        self.checks.append(Check(name, bool(passed), None if passed else witness))

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self):
        lines = [str(c) for c in self.checks]
        lines.append("verdict: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)
