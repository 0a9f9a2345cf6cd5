"""Check reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    lhs: str
    rhs: str
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "passed": self.passed}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> dict:
        out = {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.data:
            out["data"] = self.data
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [self.title]
        for key, value in self.data.items():
            lines.append(f"  {key}: {value}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}")
            lines.append(f"         lhs: {c.lhs}")
            lines.append(f"         rhs: {c.rhs}")
        return "\n".join(lines)
