"""Pass/fail records shared by the numerical verification suites."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["NumericReport"]


@dataclass
class NumericReport:
    """Maximum error of a family of numerical comparisons against a tolerance."""

    name: str
    tolerance: float
    max_error: float = 0.0
    checked: int = 0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.max_error < self.tolerance

    def record(self, err: float, where: str = "") -> None:
        self.checked += 1
        err = float(err)
        if not np.isfinite(err):
            err = math.inf
        self.details.append((where, err))
        self.max_error = max(self.max_error, err)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "checked": self.checked,
        }
