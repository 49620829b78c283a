"""Verification suites run by ``pearcey-gap verify``."""

from .asymptotics import AsymptoticsChecks
from .base import BaseCheckSet, CheckInfo, CheckResult
from .fredholm import FredholmChecks
from .kernel import KernelChecks
from .parametrix import ParametrixChecks
from .pearcey import PearceyChecks
from .registry import CheckRegistry
from .surface import SurfaceChecks

__all__ = [
    "BaseCheckSet",
    "CheckInfo",
    "CheckResult",
    "PearceyChecks",
    "KernelChecks",
    "FredholmChecks",
    "AsymptoticsChecks",
    "SurfaceChecks",
    "ParametrixChecks",
    "CheckRegistry",
]
