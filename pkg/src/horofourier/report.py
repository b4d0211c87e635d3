"""Verification reports: per-check records and their text/CSV serializations."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field


def fmt(x) -> str:
    """Fixed 17-significant-digit formatting used in every machine-readable output."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.16e" % x


@dataclass
class CheckResult:
    check_id: str
    passed: bool
    measured: float
    tolerance: float
    note: str = ""

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"


@dataclass
class VerificationReport:
    """Ordered collection of check results with free-form extra data."""

    name: str
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, check: CheckResult):
        self.checks.append(check)
        return check

    def merge(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.add(CheckResult(prefix + c.check_id, c.passed, c.measured, c.tolerance, c.note))
        self.extra.update({prefix + k: v for k, v in other.extra.items()})
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __len__(self):
        return len(self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        lines = [f"# {self.name}", ""]
        width = max((len(c.check_id) for c in self.checks), default=10)
        for c in self.checks:
            line = f"{c.status}  {c.check_id:<{width}}  measured={c.measured:.6g}  tol={c.tolerance:.3g}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        n_fail = len(self.failures())
        lines += ["", f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed"]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "status", "measured", "tolerance"])
        for c in self.checks:
            w.writerow([c.check_id, c.status, fmt(c.measured), fmt(c.tolerance)])
        return buf.getvalue()
