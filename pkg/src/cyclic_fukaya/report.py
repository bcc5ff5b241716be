"""Verification reports: one case per checked identity, JSON-serialisable."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Case:
    id: str
    status: str
    deviation: float | None = None
    lhs: str = ""
    rhs: str = ""
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS


def judged(case_id: str, deviation: float, tol: float, lhs="", rhs="", detail="") -> Case:
    return Case(case_id, PASS if deviation <= tol else FAIL, float(deviation),
                str(lhs), str(rhs), detail)


@dataclass
class Report:
    suite: str
    cases: list[Case] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.cases:
            self.cases.append(Case(prefix + c.id, c.status, c.deviation, c.lhs, c.rhs, c.detail))
        return self

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.ok]

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.cases if c.deviation is not None), default=0.0)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def canonical(self) -> "Report":
        return Report(self.suite, sorted(self.cases, key=lambda c: c.id), dict(self.config))

    def to_dict(self) -> dict:
        r = self.canonical()
        return {
            "suite": r.suite,
            "config": r.config,
            "summary": {
                "cases": len(r.cases),
                "failed": len(r.failures),
                "max_deviation": r.max_deviation,
                "passed": r.passed,
            },
            "cases": [asdict(c) for c in r.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary_line(self) -> str:
        return (f"{self.suite}: {len(self.cases) - len(self.failures)}/{len(self.cases)} "
                f"pass, max deviation {self.max_deviation:.3e}")
