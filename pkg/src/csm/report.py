"""Run reports and their table / json / csv renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

FORMATS = ("table", "json", "csv")


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    threshold: float
    comparison: str = "<="

    @classmethod
    def at_most(cls, name: str, value: float, threshold: float) -> Check:
        return cls(name, bool(value <= threshold), float(value), float(threshold), "<=")

    @classmethod
    def at_least(cls, name: str, value: float, threshold: float) -> Check:
        return cls(name, bool(value >= threshold), float(value), float(threshold), ">=")


@dataclass
class RunReport:
    scenario: dict[str, Any]
    exact: dict[str, Any]
    checks: list[Check]
    sampled: dict[str, Any] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.scenario.get("name", ""))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        if any(c.name == check.name for c in self.checks):
            raise ValueError(f"duplicate check {check.name!r}")
        self.checks.append(check)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        d = json.loads(text)
        d["checks"] = [Check(**c) for c in d["checks"]]
        return cls(**d)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        if v == 0 or (1e-4 <= abs(v) < 1e6):
            return f"{v:.12g}"
        return f"{v:.6e}"
    return str(v)


def _result_rows(report: RunReport):
    for k, v in report.exact.items():
        yield "exact", k, v
    for k, v in (report.sampled or {}).items():
        yield "sampled", k, v


def emit_table(report: RunReport) -> str:
    out = [f"scenario: {report.name} ({report.scenario.get('kind')})"]
    for section, title in (("exact", "exact results"), ("sampled", "sampled results")):
        rows = [(k, v) for s, k, v in _result_rows(report) if s == section]
        if not rows:
            continue
        out.append(f"\n{title}:")
        width = max(len(k) for k, _ in rows)
        out += [f"  {k:<{width}}  {_fmt(v)}" for k, v in rows]
    out.append("\nchecks:")
    width = max((len(c.name) for c in report.checks), default=0)
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        out.append(f"  [{status}] {c.name:<{width}}  {_fmt(c.value)} {c.comparison} {_fmt(c.threshold)}")
    out.append(f"\n{'all checks passed' if report.passed else 'SOME CHECKS FAILED'}")
    return "\n".join(out) + "\n"


def emit_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scenario", "section", "name", "value", "passed"])
    for section, k, v in _result_rows(report):
        w.writerow([report.name, section, k, repr(v) if isinstance(v, float) else v, ""])
    for c in report.checks:
        w.writerow([report.name, "check", c.name, repr(c.value), c.passed])
    return buf.getvalue()


def emit(report: RunReport, fmt: str = "table") -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "table":
        return emit_table(report)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def finite(x: float) -> float:
    """JSON-safe float: infinities become a large sentinel so reports stay valid JSON."""
    x = float(x)
    if math.isnan(x):
        raise ValueError("NaN in report")
    return x if math.isfinite(x) else math.copysign(1e308, x)
