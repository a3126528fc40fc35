"""Structured pass/fail reports shared by the verification suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-degenerate"


def describe_matrix_mismatch(m) -> str:
    """Locate the first nonzero entry of a residual matrix."""
    hit = m.first_nonzero()
    if hit is None:
        return ""
    i, j, value = hit
    return f"first nonzero residual at ({i},{j}): {value}"


@dataclass
class Check:
    id: str
    statement: str
    status: str
    detail: str = ""

    def as_dict(self):
        return {"id": self.id, "statement": self.statement,
                "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    """One suite's worth of named checks at fixed parameters."""

    suite: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, check_id: str, statement: str, ok: bool, detail: str = ""):
        self.checks.append(
            Check(check_id, statement, PASS if ok else FAIL, detail if not ok else detail)
        )
        return ok

    def add_matrix_zero(self, check_id: str, statement: str, residual):
        """Pass iff the residual matrix is exactly zero."""
        ok = residual.is_zero()
        return self.add(check_id, statement, ok,
                        "" if ok else describe_matrix_mismatch(residual))

    def add_info(self, check_id: str, statement: str, detail: str = ""):
        """Informational entry that never fails."""
        self.checks.append(Check(check_id, statement, PASS, detail))

    def add_skipped(self, check_id: str, statement: str, detail: str = ""):
        self.checks.append(Check(check_id, statement, SKIPPED, detail))

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == FAIL]

    def as_dict(self):
        return {
            "suite": self.suite,
            "params": dict(sorted(self.params.items())),
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)
