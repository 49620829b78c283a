"""Large-gap expansion of F(s;ρ) and the fit of its undetermined constant."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FitError
from .pearcey_fn import PearceyParams
from .surface import surface_constants

logger = logging.getLogger(__name__)

MIN_SAMPLES = 5
FIT_WINDOW = (4.0, 8.0)
MAX_CONDITION = 1e10


@dataclass(frozen=True)
class ExpansionTerms:
    s: float
    rho: float
    leading: float
    quad: float
    frac: float
    log: float
    rho4: float
    c: float

    @property
    def total(self) -> float:
        return self.leading + self.quad + self.frac + self.log + self.rho4 + self.c

    @property
    def without_constant(self) -> float:
        return self.total - self.c


@dataclass(frozen=True)
class FitReport:
    c_hat: float
    residual_exponent: float
    samples: list[tuple[float, float, float]] = field(default_factory=list)
    c_stderr: float = 0.0
    a_stderr: float = 0.0
    condition: float = 1.0
    coefficients: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "c_hat": self.c_hat,
            "c_stderr": self.c_stderr,
            "a_stderr": self.a_stderr,
            "residual_exponent": self.residual_exponent,
            "condition": self.condition,
            "coefficients": list(self.coefficients),
            "samples": [{"s": s, "F": f, "G": g} for s, f, g in self.samples],
        }


def _check_s(s: float) -> None:
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")


def F_expansion(s: float, rho: float, c: float = 0.0) -> ExpansionTerms:
    """−9s^{8/3}/2^{17/3} + ρs²/4 − ρ²s^{4/3}/2^{10/3} − (2/9)ln s + ρ⁴/216 + C."""
    _check_s(s)
    return ExpansionTerms(
        s=s,
        rho=rho,
        leading=-9 * s ** (8 / 3) / 2 ** (17 / 3),
        quad=rho * s**2 / 4,
        frac=-(rho**2) * s ** (4 / 3) / 2 ** (10 / 3),
        log=-2 / 9 * math.log(s),
        rho4=rho**4 / 216,
        c=c,
    )


def dFds_expansion(s: float, rho: float, refined: bool = False) -> float:
    """Large-s form of ∂F/∂s.

    The default is −3s^{5/3}/2^{8/3} + ρs/2 − ρ²s^{1/3}/(3·2^{4/3}) − 2/(9s). With
    ``refined`` the unexpanded −(1/s)(½s^{8/3}C₁² + (C₁ − 12C₃)/(32C₁)) is returned;
    the two agree up to O(s^{−5/3}).
    """
    _check_s(s)
    if refined:
        k = surface_constants(s, PearceyParams(rho))
        return -(0.5 * s ** (8 / 3) * k.c1**2 + (k.c1 - 12 * k.c3) / (32 * k.c1)) / s
    return (
        -3 * s ** (5 / 3) / 2 ** (8 / 3)
        + rho * s / 2
        - rho**2 * s ** (1 / 3) / (3 * 2 ** (4 / 3))
        - 2 / (9 * s)
    )


def dFdrho_expansion(s: float, rho: float) -> float:
    _check_s(s)
    return s**2 / 4 - rho * s ** (4 / 3) / 2 ** (7 / 3) + rho**3 / 54


def _design(s: np.ndarray, extra_terms: int) -> np.ndarray:
    powers = [0.0] + [-2 * (k + 1) / 3 for k in range(extra_terms + 1)]
    return np.column_stack([s**p for p in powers])


def _log_slope(x: np.ndarray, y: np.ndarray) -> float:
    keep = (x > 0) & (y > 0)
    if np.count_nonzero(keep) < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope)


def fit_constant(
    samples: list[tuple[float, float]],
    rho: float,
    extra_terms: int = 0,
    allow_window: bool = False,
) -> FitReport:
    """Least-squares fit of G(s) = F(s) − expansion(c=0) to c + a·s^{−2/3} (+ extra powers).

    Args:
        samples: (s, F) pairs, at least five, all with s in [4, 8].
        rho: The ρ the samples were computed at.
        extra_terms: Number of further powers s^{−4/3}, s^{−2}, … in the model.
        allow_window: Accept samples outside [4, 8] (logged as a warning).

    Returns:
        FitReport: c_hat with standard errors and the decay exponent of |G − c_hat|.

    Raises:
        FitError: Too few samples, samples outside the window, or an ill-conditioned design.
    """
    if len(samples) < MIN_SAMPLES:
        raise FitError(f"need at least {MIN_SAMPLES} samples, got {len(samples)}")
    if extra_terms < 0:
        raise FitError(f"extra_terms must be non-negative, got {extra_terms}")
    s = np.array([p[0] for p in samples], dtype=float)
    f = np.array([p[1] for p in samples], dtype=float)
    if s.min() < FIT_WINDOW[0] or s.max() > FIT_WINDOW[1]:
        if not allow_window:
            raise FitError(f"fit samples span [{s.min()}, {s.max()}] outside {FIT_WINDOW}")
        logger.warning(f"⚠️ fit samples span [{s.min()}, {s.max()}] outside {FIT_WINDOW}")
    g = f - np.array([F_expansion(si, rho).without_constant for si in s])

    x = _design(s, extra_terms)
    n, p = x.shape
    if n <= p:
        raise FitError(f"{n} samples cannot determine {p} coefficients")
    condition = float(np.linalg.cond(x))
    if not math.isfinite(condition) or condition > MAX_CONDITION:
        raise FitError(f"fit is ill-conditioned (cond = {condition:.3e}); widen the s-range")
    coef, _, _, _ = np.linalg.lstsq(x, g, rcond=None)
    resid = g - x @ coef
    sigma2 = float(resid @ resid) / (n - p)
    cov = sigma2 * np.linalg.inv(x.T @ x)
    stderr = np.sqrt(np.abs(np.diag(cov)))

    c_hat = float(coef[0])
    exponent = _log_slope(s, np.abs(g - c_hat))
    logger.debug(f"fit at rho={rho}: c_hat={c_hat:.10g} ± {stderr[0]:.2e}, exponent {exponent:.3f}")
    return FitReport(
        c_hat=c_hat,
        residual_exponent=exponent,
        samples=[(float(a), float(b), float(c)) for a, b, c in zip(s, f, g)],
        c_stderr=float(stderr[0]),
        a_stderr=float(stderr[1]),
        condition=condition,
        coefficients=tuple(float(c) for c in coef),
    )


def forrester_exponent(samples: list[tuple[float, float]]) -> float:
    """Log-log slope of −F against s; tends to 8/3.

    Raises:
        FitError: With fewer than five samples or a non-negative F.
    """
    if len(samples) < MIN_SAMPLES:
        raise FitError(f"need at least {MIN_SAMPLES} samples, got {len(samples)}")
    s = np.array([p[0] for p in samples], dtype=float)
    f = np.array([p[1] for p in samples], dtype=float)
    if np.any(f >= 0):
        raise FitError("log-log slope needs F < 0 at every sample")
    return _log_slope(s, -f)


def synthetic_samples(
    s_values: list[float], rho: float, c: float, a: float = 0.3
) -> list[tuple[float, float]]:
    """Exact expansion plus c + a·s^{−2/3}, for exercising the fit."""
    return [(s, F_expansion(s, rho).without_constant + c + a * s ** (-2 / 3)) for s in s_values]
