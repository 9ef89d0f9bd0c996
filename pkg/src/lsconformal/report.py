"""Check reports shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .polyring import Poly


@dataclass
class Residual:
    check: str
    index: tuple
    value: Any  # a Poly or a tuple of Polys

    def is_zero(self) -> bool:
        if isinstance(self.value, Poly):
            return self.value.is_zero()
        return all(p.is_zero() for p in self.value)


@dataclass
class Report:
    """Outcome of a check: named boolean sub-checks plus exact nonzero residuals.

    Truthiness is ``passed``.  ``data`` carries derived objects (tables,
    witnesses) that callers may want to print.
    """

    name: str
    checks: dict = field(default_factory=dict)
    residuals: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.passed

    def add(self, check: str, index: tuple, value) -> None:
        """Record a residual; a zero residual only marks the sub-check as seen."""
        r = Residual(check, tuple(index), value)
        self.checks.setdefault(check, True)
        if not r.is_zero():
            self.checks[check] = False
            self.residuals.append(r)

    def residuals_for(self, check: str) -> list:
        return [r for r in self.residuals if r.check == check]

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for k, v in other.checks.items():
            key = prefix + k
            self.checks[key] = self.checks.get(key, True) and v
        for r in other.residuals:
            self.residuals.append(Residual(prefix + r.check, r.index, r.value))
        return self


class CheckFailed(ValueError):
    """Raised when an input is rejected; carries the failing report."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report
