"""Residual reports shared by the verifiers and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .series import _Series


@dataclass
class CheckResult:
    name: str
    order: int
    passed: bool
    first_failing_order: Optional[int] = None
    residual_sample: Optional[str] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        doc = {"name": self.name, "order": self.order, "pass": self.passed}
        if self.first_failing_order is not None:
            doc["first_failing_order"] = self.first_failing_order
        if self.residual_sample is not None:
            doc["residual_sample"] = self.residual_sample
        if self.note is not None:
            doc["note"] = self.note
        return doc


@dataclass
class Report:
    check: str
    order: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    @property
    def first_failing_order(self) -> Optional[int]:
        bad = [r.first_failing_order for r in self.results if r.first_failing_order is not None]
        return min(bad) if bad else None

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        doc = {"check": self.check, "order": self.order, "pass": self.passed}
        if self.first_failing_order is not None:
            doc["first_failing_order"] = self.first_failing_order
            sample = next(r.residual_sample for r in self.results if not r.passed and r.residual_sample)
            doc["residual_sample"] = sample
        doc["items"] = [r.to_json() for r in self.results]
        return doc


def check_zero(name: str, residual: _Series, order: int) -> CheckResult:
    """Pass iff ``residual`` is known through ``t^order`` and vanishes there."""
    first = residual.first_nonzero()
    if first is not None and first <= order:
        return CheckResult(
            name, order, False, first, f"t^{first}: {residual[first]}"
        )
    if residual.order < order:
        return CheckResult(
            name, order, False, None, None,
            note=f"residual only known through t^{residual.order}",
        )
    return CheckResult(name, order, True)


def check_equal(name: str, lhs: _Series, rhs: _Series, order: int) -> CheckResult:
    return check_zero(name, lhs - rhs, order)
