"""Machine-readable verification reports.

A report is a flat list of named checks, each either an equality check
(|lhs - rhs| <= tolerance) or a bound check (lhs <= rhs + tolerance).  The
JSON rendering is deterministic: fixed key order, floats printed with 17
significant digits, no timestamps.  Wall time is kept on the in-memory object
only, so identical (seed, flags) produce identical report bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckResult:
    name: str
    kind: str  # "eq" or "bound"
    lhs: float
    rhs: float
    tolerance: float

    def __post_init__(self):
        if self.kind not in ("eq", "bound"):
            raise ValueError(f"unknown check kind {self.kind!r}")

    @property
    def passed(self) -> bool:
        if self.kind == "eq":
            return abs(self.lhs - self.rhs) <= self.tolerance
        return self.lhs <= self.rhs + self.tolerance


def equality(name: str, lhs: float, rhs: float, tolerance: float) -> CheckResult:
    return CheckResult(name, "eq", float(lhs), float(rhs), float(tolerance))


def bound(name: str, lhs: float, rhs: float, tolerance: float) -> CheckResult:
    return CheckResult(name, "bound", float(lhs), float(rhs), float(tolerance))


def count_zero(name: str, count: int) -> CheckResult:
    """A violation counter that must be exactly zero."""
    return CheckResult(name, "eq", float(count), 0.0, 0.0)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    grid: str
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    table: list[dict] | None = None
    wall_time_s: float | None = None

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "grid": self.grid,
            "checks": [
                {
                    "name": c.name,
                    "kind": c.kind,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.table is not None:
            out["table"] = self.table
        return out


def merge_reports(suite: str, seed: int, grid: str, reports) -> SuiteReport:
    """Flatten several reports into one, prefixing check names with the suite."""
    merged = SuiteReport(suite, seed, grid)
    for rep in reports:
        for c in rep.checks:
            merged.add(CheckResult(f"{rep.suite}/{c.name}", c.kind, c.lhs, c.rhs, c.tolerance))
        merged.notes.extend(f"{rep.suite}: {note}" for note in rep.notes)
        if rep.table is not None:
            merged.table = (merged.table or []) + rep.table
    return merged


def _render(obj, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  "{k}": {_render(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_render(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("reports must contain finite numbers only")
        return format(obj, ".17g")
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(obj)} in a report")


def render_json(report: SuiteReport) -> str:
    """Deterministic JSON text (17 significant digits, fixed order)."""
    return _render(report.to_json(), 0) + "\n"
