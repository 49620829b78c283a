"""Check registry and execution."""

import asyncio
import logging

from ..context import ComputeContext
from .asymptotics import AsymptoticsChecks
from .base import CheckInfo, CheckResult, evaluate
from .fredholm import FredholmChecks
from .kernel import KernelChecks
from .parametrix import ParametrixChecks
from .pearcey import PearceyChecks
from .surface import SurfaceChecks

logger = logging.getLogger(__name__)


class CheckRegistry:
    """Registry for all verification checks."""

    def __init__(self, context: ComputeContext) -> None:
        self.context = context
        self.checks: dict[str, CheckInfo] = {}

        self._register_checks(PearceyChecks(context))
        self._register_checks(KernelChecks(context))
        self._register_checks(FredholmChecks(context))
        self._register_checks(AsymptoticsChecks(context))
        self._register_checks(SurfaceChecks(context))
        self._register_checks(ParametrixChecks(context))

    def _register_checks(self, check_set) -> None:
        """Register checks from a check suite."""
        for name, info in check_set.get_checks().items():
            self.checks[name] = info

    def get_checks(self) -> dict[str, CheckInfo]:
        """Get all registered checks."""
        return self.checks

    @property
    def suites(self) -> list[str]:
        return sorted({info.suite for info in self.checks.values()})

    async def execute_check(self, name: str) -> CheckResult:
        """Execute a check by name."""
        if name not in self.checks:
            return CheckResult(
                name=name,
                suite="",
                value=float("nan"),
                tolerance=0.0,
                passed=False,
                is_error=True,
                detail=f"Check '{name}' not found",
            )

        info = self.checks[name]
        try:
            return await self.context.run(evaluate, info, self.context.tolerance(info.tolerance))
        except Exception as e:
            logger.exception(f"Error executing check {name}")
            return CheckResult(
                name=name,
                suite=info.suite,
                value=float("nan"),
                tolerance=self.context.tolerance(info.tolerance),
                passed=False,
                is_error=True,
                detail=f"Error executing {name}: {str(e)}",
            )

    async def run_all(self, only: list[str] | None = None) -> list[CheckResult]:
        """Run every check, or those of the named suites; results keep registration order."""
        names = [n for n, info in self.checks.items() if not only or info.suite in only]
        results = await asyncio.gather(*(self.execute_check(n) for n in names))
        for result in results:
            status = "✅" if result.passed else "❌"
            logger.info(f"{status} {result.name}: {result.value:.3e} (tol {result.tolerance:.1e})")
        return list(results)
