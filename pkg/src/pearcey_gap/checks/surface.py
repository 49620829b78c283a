"""Checks on the w-sheets and λ-functions."""

from ..contour import boundary_value
from ..parametrix.local import lambda_123_at_minus1, lambda_123_closed_form
from ..pearcey_fn import PearceyParams
from ..surface import lambda_constant_at_infinity, lambda_j, lambda_star, series_check, surface_constants, w
from .base import BaseCheckSet, CheckInfo

VIETA_POINTS = (0.2 + 0.3j, -0.7 + 1.5j, 2.0 - 1.0j, -3.0 - 0.2j)
SERIES_CASES = (
    ("w", "-1", 1),
    ("w", "+1", 2),
    ("w", "inf", 3),
    ("lambda", "-1", 3),
    ("lambda", "+1", 1),
    ("lambda", "inf", 1),
)


def vieta_defect(points=VIETA_POINTS) -> float:
    worst = 0.0
    for z in points:
        r = [w(j, z) for j in (1, 2, 3)]
        worst = max(
            worst,
            abs(sum(r)),
            abs(r[0] * r[1] + r[0] * r[2] + r[1] * r[2] + 3),
            abs(r[0] * r[1] * r[2] + 2 * z) / max(1.0, abs(z)),
        )
    return worst


def lambda_sum_defect(z: complex = 0.2 + 0.3j, s: float = 2.0, rho: float = 0.7) -> float:
    """λ₁ + λ₂ + λ₃ against −9/2^{7/3} + 3ρ/(2^{2/3}s^{2/3})."""
    params = PearceyParams(rho)
    total = sum(lambda_j(j, z, s, params) for j in (1, 2, 3))
    return abs(total - (-9 / 2 ** (7 / 3) + 3 * rho / (2 ** (2 / 3) * s ** (2 / 3))))


def cut_continuation_defect(x: float = 2.0) -> float:
    """w₁ from above the cut (1, ∞) continues into w₂ from below."""
    upper = boundary_value(lambda z: w(1, z), x, 1j)
    lower = boundary_value(lambda z: w(2, z), x, -1j)
    return abs(upper - lower)


def worst_series_order(tolerance_cases=SERIES_CASES) -> float:
    """Largest |empirical − expected| order over the series cases."""
    worst = 0.0
    for target, point, j in tolerance_cases:
        result = series_check(target, point, j, s=2.0, params=PearceyParams(0.5))
        worst = max(worst, abs(result.order - result.expected_order))
    return worst


def infinity_constant_defect(s: float = 3.0, rho: float = 0.5) -> float:
    params = PearceyParams(rho)
    return abs(lambda_constant_at_infinity(s, params) + surface_constants(s, params).d0)


def right_half_sign() -> float:
    """Re(λ₂* − λ₁*) at 2 + 2i, positive only if the decay sign is wrong."""
    return max(0.0, float((lambda_star(2, 2 + 2j) - lambda_star(1, 2 + 2j)).real))


def phase_combination_defect(cases=((1.0, 0.0), (3.0, 0.5), (6.0, -1.2))) -> float:
    """λ₁ + λ₃ − 2λ₂ at z = −1 against its closed form, worst over (s, ρ)."""
    worst = 0.0
    for s, rho in cases:
        params = PearceyParams(rho)
        worst = max(worst, abs(lambda_123_at_minus1(s, params) - lambda_123_closed_form(s, params)))
    return worst


class SurfaceChecks(BaseCheckSet):
    """Vieta, sum, cut-continuation and series-order checks."""

    suite = "surface"

    def get_checks(self) -> dict[str, CheckInfo]:
        checks = [
            self.check("vieta", "symmetric functions of w_1, w_2, w_3", 1e-11, vieta_defect),
            self.check("lambda_sum", "sum of the lambda_j", 1e-12, lambda_sum_defect),
            self.check("cut_continuation", "w_1 above (1, inf) meets w_2 below", 1e-6, cut_continuation_defect),
            self.check("series_orders", "empirical orders of the truncated series", 0.2, worst_series_order),
            self.check("infinity_constant", "constant term of lambda_3 at infinity is -D0", 1e-6, infinity_constant_defect),
            self.check("lambda_123", "lambda_1 + lambda_3 - 2 lambda_2 at z = -1", 1e-10, phase_combination_defect),
            self.check("decay_sign", "Re(lambda_2* - lambda_1*) < 0 right of the cusp", 0.0, right_half_sign),
        ]
        return {c.name: c for c in checks}
