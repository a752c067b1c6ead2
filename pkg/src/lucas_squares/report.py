"""Report records shared by the verification suites and the CLI."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple

from lucas_squares.lucas_core import SolutionRecord

PASS = "pass"
FAIL = "fail"


class Check(NamedTuple):
    name: str
    paper_anchor: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


def check(name: str, anchor: str, ok: bool, detail: str = "") -> Check:
    return Check(name, anchor, PASS if ok else FAIL, detail)


def all_pass(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)


def _jsonable(v: Any) -> Any:
    # counts and indices stay ints; arithmetic values are stringified by their producers
    if v is None or isinstance(v, (bool, int, str, float)):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def solution_to_dict(rec: SolutionRecord) -> dict[str, Any]:
    return {
        "n": rec.n,
        "P": str(rec.P),
        "Q": str(rec.Q),
        "value": str(rec.value),
        "root": str(rec.root),
    }


@dataclass
class Report:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    solutions: list[SolutionRecord] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return not all_pass(self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": _jsonable(self.parameters),
            "solutions": [solution_to_dict(s) for s in self.solutions],
            "checks": [c._asdict() for c in self.checks],
            "stats": _jsonable(self.stats),
        }

    def solutions_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "P", "Q", "value", "root"])
        for s in self.solutions:
            writer.writerow([s.n, s.P, s.Q, s.value, s.root])
        return buf.getvalue()

    def checks_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(Check._fields)
        writer.writerows(self.checks)
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        if self.parameters:
            lines.append("parameters: " + ", ".join(f"{k}={v}" for k, v in self.parameters.items()))
        for s in self.solutions:
            lines.append(f"U_{s.n}({s.P}, {s.Q}) = {s.value} = {s.root}^2")
        for c in self.checks:
            tail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"[{c.status.upper()}] {c.name}: {c.paper_anchor}{tail}")
        for k, v in self.stats.items():
            lines.append(f"{k}: {v}")
        if self.checks:
            n_pass = sum(c.passed for c in self.checks)
            lines.append(f"{n_pass}/{len(self.checks)} checks passed")
        return "\n".join(lines)
