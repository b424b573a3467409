"""Deterministic verification reports.

A report echoes its request, records pass/fail per check, lists the
violations found and carries tables of dimensions or operations.  JSON
output is canonical so two runs of the same request give the same bytes.

Usage::

    from pongalg.reports import Report

    report = Report("homology", {"m": 4}, {"homology": True})
    report.to_json()        # canonical JSON
    report.to_pretty()      # human-readable text
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Any

from .checks import Violation

VERSION = "0.1.0"
REPORT_SCHEMA = "pongalg.report@1"


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    command: str
    request: dict[str, Any]
    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    tables: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    version: str = ""
    request_hash: str = ""

    def __post_init__(self) -> None:
        if not self.request_hash:
            self.request_hash = sha256_text(canonical_json(self.request))

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and not self.violations

    def failing_checks(self) -> list[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)

    def as_dict(self) -> dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA,
            "command": self.command,
            "request": self.request,
            "request_hash": self.request_hash,
            "version": self.version,
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "violations": [v.to_json() for v in self.violations],
            "tables": self.tables,
        }

    def to_json(self) -> str:
        return canonical_json(self.as_dict())

    @classmethod
    def from_json(cls, payload: str) -> Report:
        data = json.loads(payload)
        if data.get("schema_version") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
        return cls(
            command=data["command"],
            request=data["request"],
            checks=data["checks"],
            violations=[Violation(v["subject"], v["rule"], v["message"]) for v in data["violations"]],
            tables=data["tables"],
            version=data["version"],
            request_hash=data["request_hash"],
        )

    def to_csv(self) -> str:
        """Dimension tables only, one block per table."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for name in sorted(self.tables):
            rows = self.tables[name]
            if not rows or "dimension" not in rows[0]:
                continue
            columns = sorted(rows[0])
            writer.writerow(["table"] + columns)
            for row in rows:
                writer.writerow([name] + [_cell(row.get(c)) for c in columns])
        return out.getvalue()

    def to_pretty(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        args = ", ".join(f"{k}={_cell(v)}" for k, v in sorted(self.request.items()) if v not in (None, [], ""))
        if args:
            lines.append(f"  request: {args}")
        for name, ok in sorted(self.checks.items()):
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
        for v in self.violations:
            lines.append(f"    - {v}")
        for name in sorted(self.tables):
            lines.append(f"  {name}:")
            for row in self.tables[name]:
                lines.append("    " + "  ".join(f"{k}={_cell(row[k])}" for k in sorted(row)))
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "pretty":
            return self.to_pretty()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(_cell(v) for v in value) + ")"
    return "" if value is None else str(value)
