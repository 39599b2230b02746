"""Structured verification outcomes."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one identity check: pass/fail plus a witness of the first failure."""

    name: str
    params: dict
    passed: bool
    witness: object = None
    details: str = ""

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": _jsonable(self.params),
            "status": "pass" if self.passed else "fail",
            "witness": _jsonable(self.witness),
            "details": self.details,
        }


@dataclass
class ReportDocument:
    """A suite of case reports with deterministic ordering."""

    suite: str
    params: dict
    cases: list = field(default_factory=list)
    started: float = field(default_factory=time.monotonic)

    def add(self, report: Report):
        self.cases.append(report)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def first_failure(self):
        for c in self.cases:
            if not c.passed:
                return c
        return None

    def to_dict(self, include_timing: bool = True) -> dict:
        cases = sorted((c.to_dict() for c in self.cases), key=lambda d: d["name"])
        doc = {
            "suite": self.suite,
            "parameters": _jsonable(self.params),
            "cases": cases,
            "summary": {
                "total": len(cases),
                "passed": sum(1 for c in cases if c["status"] == "pass"),
                "failed": sum(1 for c in cases if c["status"] == "fail"),
            },
        }
        if include_timing:
            doc["timing_ms"] = round(1000.0 * (time.monotonic() - self.started), 3)
        return doc

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing), indent=2, sort_keys=True)


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return repr(obj)
