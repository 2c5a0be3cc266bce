"""Check report records: {check, instance, parameters, verdict, witnesses[]}."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import prod

PASS = "pass"
FAIL = "fail"
FLAGGED = "flagged"   # finding reported for inspection, never a failure
SKIPPED = "skipped"

MAX_WITNESSES = 10


@dataclass
class CheckReport:
    check: str
    instance: str
    parameters: dict = field(default_factory=dict)
    verdict: str = PASS
    witnesses: list = field(default_factory=list)
    cases: int = 0
    mode: str = "exhaustive"
    reason: str = ""
    violations: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def fail(self, witness) -> None:
        """Record one violation; keeps the first few witnesses."""
        self.verdict = FAIL
        self.violations += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "instance": self.instance,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "cases": self.cases,
            "violations": self.violations,
            "mode": self.mode,
            "witnesses": self.witnesses,
        }
        if self.reason:
            d["reason"] = self.reason
        return d

    def line(self) -> str:
        s = f"[{self.verdict.upper():7}] {self.check} on {self.instance}: {self.cases} cases"
        if self.mode != "exhaustive":
            s += f" ({self.mode})"
        if self.violations:
            s += f", {self.violations} violations"
        if self.reason:
            s += f" -- {self.reason}"
        return s


def skipped(check: str, instance: str, reason: str, **parameters) -> CheckReport:
    return CheckReport(check, instance, parameters, verdict=SKIPPED, reason=reason)


def cells(report: CheckReport, axes: list, limit=None, rng=None):
    """Iterate the product of ``axes`` exhaustively, or sample it.

    Sampling kicks in when the product exceeds ``limit``; the report is then
    marked ``sampled`` so partial coverage stays visible.
    """
    total = prod(len(a) for a in axes)
    if limit is None or total <= limit:
        yield from product(*axes)
        return
    rng = rng or random.Random(0)
    report.mode = f"sampled {limit}/{total}"
    for _ in range(limit):
        yield tuple(a[rng.randrange(len(a))] for a in axes)
