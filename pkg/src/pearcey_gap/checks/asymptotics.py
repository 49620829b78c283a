"""Checks on the large-gap expansion and the constant fit."""

from functools import lru_cache

from ..asymptotics import F_expansion, FitReport, dFds_expansion, fit_constant, forrester_exponent, synthetic_samples
from ..fredholm import fredholm_logdet
from ..pearcey_fn import PearceyParams
from .base import BaseCheckSet, CheckInfo

SYNTHETIC_C = -0.123456
REAL_S = (4.0, 5.0, 6.0, 7.0, 8.0)
REAL_M = 100
EXPONENT_WINDOW = (-1.0, -0.4)
FIT_RHOS = (0.0, 1.0)


def synthetic_recovery() -> float:
    samples = synthetic_samples([4.0, 5.0, 6.0, 7.0, 8.0], rho=0.0, c=SYNTHETIC_C)
    return abs(fit_constant(samples, rho=0.0).c_hat - SYNTHETIC_C)


def refined_agreement(s: float = 40.0, rho: float = 0.5) -> float:
    """|refined − polynomial| · s^{5/3}; bounded because the forms differ at O(s^{−5/3})."""
    gap = abs(dFds_expansion(s, rho, refined=True) - dFds_expansion(s, rho))
    return gap * s ** (5 / 3)


@lru_cache(maxsize=8)
def real_samples(rho: float, m: int = REAL_M, s_values: tuple[float, ...] = REAL_S) -> tuple[tuple[float, float], ...]:
    """Nyström values of F on the fit window."""
    params = PearceyParams(rho)
    return tuple((s, fredholm_logdet(s, params, m).F) for s in s_values)


def real_fit(rho: float) -> FitReport:
    return fit_constant(list(real_samples(rho)), rho=rho)


def exponent_outside_window(rhos: tuple[float, ...] = FIT_RHOS) -> float:
    """Distance of the fitted decay exponent of F − expansion − c_hat from [−1, −0.4], worst over ρ."""
    lo, hi = EXPONENT_WINDOW
    exponents = [real_fit(rho).residual_exponent for rho in rhos]
    return max(max(0.0, e - hi, lo - e) for e in exponents)


def slope_against_expansion(rho: float = 0.0) -> float:
    """|slope of −F − slope of −(expansion with the fitted constant)| on log-log axes."""
    samples = list(real_samples(rho))
    c_hat = real_fit(rho).c_hat
    model = [(s, F_expansion(s, rho, c=c_hat).total) for s, _ in samples]
    return abs(forrester_exponent(samples) - forrester_exponent(model))


def constant_spread(rhos: tuple[float, ...] = FIT_RHOS) -> float:
    """Largest |c_hat(ρ_a) − c_hat(ρ_b)|."""
    values = [real_fit(rho).c_hat for rho in rhos]
    return max(values) - min(values)


class AsymptoticsChecks(BaseCheckSet):
    suite = "asymptotics"

    def get_checks(self) -> dict[str, CheckInfo]:
        checks = [
            self.check("synthetic_fit", "fit recovers an injected constant", 1e-6, synthetic_recovery),
            self.check("refined_dFds", "refined and expanded dF/ds differ at O(s^-5/3)", 0.1, refined_agreement),
            self.check("fit_exponent", "residual decay exponent on s in [4, 8] lies in [-1, -0.4]", 0.0, exponent_outside_window),
            self.check(
                "forrester_slope",
                "log-log slope of -F follows the expansion with fitted C",
                0.05,
                lambda: max(slope_against_expansion(rho) for rho in FIT_RHOS),
            ),
            self.check("constant_across_rho", "c_hat at rho = 0 and rho = 1", 0.02, constant_spread),
        ]
        return {c.name: c for c in checks}
