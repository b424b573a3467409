"""Verification results and a pluggable check registry.

Usage::

    from pongalg.checks import Verifier, check_rule

    v = Verifier()
    v.add(check_rule("dd-relation", lambda: verify_dd_relation(3, 2)))

    problems = v.validate()     # list of Violations
    v.check()                   # raises if any violations
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    subject: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.subject}: [{self.rule}] {self.message}"

    def to_json(self) -> dict[str, str]:
        return {"subject": self.subject, "rule": self.rule, "message": self.message}


class VerificationError(Exception):
    """Raised by Verifier.check() when violations exist."""

    def __init__(self, violations: list[Violation]) -> None:
        self.violations = violations
        summary = f"{len(violations)} violation(s):\n" + "\n".join(
            f"  - {v}" for v in violations
        )
        super().__init__(summary)


# A check takes no arguments and returns the violations it found.
CheckFn = Callable[[], list[Violation]]

# A rule is a named check.
RuleTuple = tuple[str, CheckFn]


def check_rule(name: str, fn: CheckFn) -> RuleTuple:
    return (name, fn)


def expect(condition: bool, subject: str, rule: str, message: str) -> list[Violation]:
    """One-violation list when ``condition`` fails, else empty."""
    return [] if condition else [Violation(subject, rule, message)]


class Verifier:
    """Collects named checks and runs them in registration order."""

    def __init__(self) -> None:
        self._rules: list[RuleTuple] = []
        self.outcomes: dict[str, bool] = {}

    def add(self, rule: RuleTuple) -> "Verifier":
        """Add a check. Returns self for chaining."""
        self._rules.append(rule)
        return self

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self._rules]

    def validate(self) -> list[Violation]:
        """Run all checks. Returns list of Violations (empty = every check passed)."""
        violations: list[Violation] = []
        self.outcomes = {}
        for name, fn in self._rules:
            started = time.perf_counter()
            found = fn()
            logger.info("check %s: %s violation(s) in %.2fs", name, len(found), time.perf_counter() - started)
            self.outcomes[name] = not found
            violations.extend(found)
        return violations

    def check(self) -> None:
        """Raise VerificationError if any check fails."""
        violations = self.validate()
        if violations:
            raise VerificationError(violations)
