"""Run configuration for the command-line front end."""

import json
import logging
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .context import resolve_threads

logger = logging.getLogger(__name__)

Command = Literal["gap", "fit-c", "verify", "chart", "table"]
SUITES = ("pearcey", "kernel", "fredholm", "asymptotics", "surface", "parametrix")
S_MAX = 10.0
RHO_MAX = 4.0


def parse_range(text: str) -> tuple[float, float, int]:
    """``"a:b:n"`` → (a, b, n)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"s-range must look like a:b:n, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


class RunConfig(BaseModel):
    """Validated settings for one CLI invocation."""

    model_config = ConfigDict(extra="forbid")

    command: Command = "gap"
    s: float | None = None
    s_range: tuple[float, float, int] | None = None
    rho: float = 0.0
    m: int = 60
    tolerance: float = Field(default=1e-12, gt=0)
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"
    threads: int | None = Field(default=None, ge=1)
    only: list[str] | None = None
    tol_scale: float = Field(default=1.0, gt=0)
    synthetic: bool = False
    inject_c: float = -0.1
    extra_terms: int = Field(default=0, ge=0)
    allow_window: bool = False
    ms: list[int] | None = None
    x_min: float = -4.0
    x_max: float = 4.0
    y_min: float = -4.0
    y_max: float = 4.0
    nx: int = Field(default=81, ge=2)
    ny: int = Field(default=81, ge=2)
    verbose: bool = False
    quiet: bool = False

    @field_validator("s_range", mode="before")
    @classmethod
    def _parse_range(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_range(value)
        return value

    @field_validator("s")
    @classmethod
    def _check_s(cls, value: float | None) -> float | None:
        if value is not None and not 0 < value <= S_MAX:
            raise ValueError(f"s must lie in (0, {S_MAX}], got {value}")
        return value

    @field_validator("s_range")
    @classmethod
    def _check_range(cls, value: tuple[float, float, int] | None) -> tuple[float, float, int] | None:
        if value is None:
            return value
        lo, hi, n = value
        if n < 1:
            raise ValueError(f"s-range needs at least one point, got {n}")
        if not (0 < lo <= S_MAX and 0 < hi <= S_MAX):
            raise ValueError(f"s-range bounds must lie in (0, {S_MAX}], got {lo}:{hi}")
        return value

    @field_validator("rho")
    @classmethod
    def _check_rho(cls, value: float) -> float:
        if abs(value) > RHO_MAX:
            raise ValueError(f"|rho| must not exceed {RHO_MAX}, got {value}")
        return value

    @field_validator("m")
    @classmethod
    def _check_m(cls, value: int) -> int:
        if not 8 <= value <= 400 or value % 2:
            raise ValueError(f"m must be an even integer in [8, 400], got {value}")
        return value

    @field_validator("only")
    @classmethod
    def _check_only(cls, value: list[str] | None) -> list[str] | None:
        if value:
            unknown = sorted(set(value) - set(SUITES))
            if unknown:
                raise ValueError(f"unknown suites {unknown}; choose from {list(SUITES)}")
        return value

    @model_validator(mode="after")
    def _check_exclusive(self) -> "RunConfig":
        if self.s is not None and self.s_range is not None:
            raise ValueError("give either s or s_range, not both")
        if self.verbose and self.quiet:
            raise ValueError("verbose and quiet are mutually exclusive")
        return self

    @property
    def s_values(self) -> list[float]:
        """The s grid for gap and fit-c, in increasing order of index."""
        if self.s_range is not None:
            lo, hi, n = self.s_range
            return [float(v) for v in np.linspace(lo, hi, n)]
        if self.s is not None:
            return [self.s]
        if self.command == "fit-c":
            return [float(v) for v in np.linspace(4.0, 8.0, 9)]
        return [1.0]

    @property
    def resolved_threads(self) -> int:
        return resolve_threads(self.threads)


def load_config(path: Path | None, overrides: dict[str, Any]) -> RunConfig:
    """Defaults, then the JSON file, then explicit flag values."""
    data: dict[str, Any] = {}
    if path is not None:
        data.update(json.loads(Path(path).read_text()))
        logger.debug(f"loaded config from {path}: {sorted(data)}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.model_validate(data)
