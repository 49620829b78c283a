"""Base classes for verification checks."""

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from ..context import ComputeContext


@dataclass
class CheckResult:
    """Outcome of one check: measured value against its (scaled) tolerance."""

    name: str
    suite: str
    value: float
    tolerance: float
    passed: bool
    is_error: bool = False
    detail: str = ""
    # Would the check still pass with the tolerance loosened back to its base value?
    passes_at_base: bool = True

    @property
    def tolerance_limited(self) -> bool:
        return not self.passed and self.passes_at_base and not self.is_error

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "suite": self.suite,
            "value": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "is_error": self.is_error,
            "detail": self.detail,
        }


@dataclass
class CheckInfo:
    """A named check with its base tolerance."""

    name: str
    suite: str
    description: str
    tolerance: float
    measure: Callable[[], float]


class BaseCheckSet(ABC):
    """Base class for check suites."""

    suite: str = ""

    def __init__(self, context: ComputeContext):
        self.context = context

    def check(self, name: str, description: str, tolerance: float, measure: Callable[[], float]) -> CheckInfo:
        return CheckInfo(
            name=f"{self.suite}.{name}",
            suite=self.suite,
            description=description,
            tolerance=tolerance,
            measure=measure,
        )

    @abstractmethod
    def get_checks(self) -> dict[str, CheckInfo]:
        """Get checks provided by this suite."""
        pass


def evaluate(info: CheckInfo, limit: float) -> CheckResult:
    """Run one measure and compare it against ``limit``, the scaled tolerance."""
    value = float(info.measure())
    return CheckResult(
        name=info.name,
        suite=info.suite,
        value=value,
        tolerance=limit,
        passed=value <= limit,
        passes_at_base=value <= info.tolerance,
        detail=info.description,
    )

