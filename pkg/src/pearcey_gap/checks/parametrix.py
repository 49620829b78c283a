"""Checks on the Bessel model and the global and local parametrices."""

import math

import numpy as np

from ..contour import boundary_value
from ..parametrix.bessel import b_log_derivative_31, infinity_defect, phi_bessel
from ..parametrix.correction import (
    dfds_correction,
    dfds_correction_closed_form,
    e_log_derivative_31,
    j1_laurent,
    j_minus1_closed_form,
    matching_defect,
)
from ..parametrix.global_n import N_JUMP_RIGHT, global_constants, global_N, n1_coefficient, n_symmetry_defect
from ..parametrix.local import e_at_minus1, e_at_minus1_closed_form, prefactor_E
from ..pearcey_fn import PearceyParams
from .base import BaseCheckSet, CheckInfo

BESSEL_FLIP = np.array([[0, 1], [-1, 0]], dtype=complex)


def bessel_det_defect(points=(3 + 4j, 0.5 - 0.1j, -2 + 1j, 10j)) -> float:
    return max(abs(np.linalg.det(phi_bessel(0.0, z)) - 1) for z in points)


def bessel_negative_axis_defect(x: float = -4.0, alpha: float = 0.0) -> float:
    upper = boundary_value(lambda z: phi_bessel(alpha, z), x, 1j)
    lower = boundary_value(lambda z: phi_bessel(alpha, z), x, -1j)
    return float(np.max(np.abs(upper - lower @ BESSEL_FLIP)))


def n_jump_defect(x: float = 2.0) -> float:
    upper = boundary_value(global_N, x, 1j)
    lower = boundary_value(global_N, x, -1j)
    return float(np.max(np.abs(upper - lower @ N_JUMP_RIGHT)))


def n1_defect() -> float:
    recovered = n1_coefficient()
    return abs(recovered[0, 1] - global_constants().n1[0, 1])


def e_analyticity_defect(x: float = -1.1, s: float = 4.0, rho: float = 0.0) -> float:
    params = PearceyParams(rho)
    upper = boundary_value(lambda z: prefactor_E(z, s, params), x, 1j)
    lower = boundary_value(lambda z: prefactor_E(z, s, params), x, -1j)
    return float(np.max(np.abs(upper - lower)) / np.max(np.abs(upper)))


def e_closed_form_defect(s: float = 4.0, rho: float = 0.5) -> float:
    params = PearceyParams(rho)
    return float(np.max(np.abs(e_at_minus1(s, params) - e_at_minus1_closed_form(s, params))))


def residue_defect(s: float = 4.0, rho: float = 0.5) -> float:
    params = PearceyParams(rho)
    return float(np.max(np.abs(j1_laurent(s, params).minus1 - j_minus1_closed_form(s, params))))


MATCHING_S = (4.0, 8.0, 16.0)


def matching_order_defect(rho: float = 0.0, s_values: tuple[float, ...] = MATCHING_S, corrected: bool = True) -> float:
    """|fitted decay order + expected| for the boundary matching of P^{(−1)} with N.

    The order is the least-squares slope of log defect against log s.
    """
    params = PearceyParams(rho)
    expected = 8 / 3 if corrected else 4 / 3
    defects = [matching_defect(s, params, corrected=corrected) for s in s_values]
    slope, _ = np.polyfit(np.log(s_values), np.log(defects), 1)
    return abs(slope + expected)


class ParametrixChecks(BaseCheckSet):
    """Jumps, closed forms and matching orders of the parametrices."""

    suite = "parametrix"

    def get_checks(self) -> dict[str, CheckInfo]:
        params = PearceyParams(0.5)
        checks = [
            self.check("bessel_det", "det Phi = 1", 1e-10, bessel_det_defect),
            self.check("bessel_jump", "Phi_+ = Phi_- [[0,1],[-1,0]] on the negative axis", 1e-9, bessel_negative_axis_defect),
            self.check("bessel_infinity", "two-term expansion of Phi at |z| = 400", 1e-3, lambda: infinity_defect(0.0, 400.0)),
            self.check(
                "bessel_origin",
                "(B^-1 B')_31 tends to pi i/2",
                1e-6,
                lambda: abs(b_log_derivative_31(0.0, 1e-8 + 1e-8j) - 0.5j * math.pi),
            ),
            self.check("n_jump", "N_+ = N_- J on (1, inf)", 1e-8, n_jump_defect),
            self.check("n_symmetry", "N(z) = Upsilon N(-z) Lambda", 1e-10, lambda: n_symmetry_defect(0.3 + 0.4j)),
            self.check("n1_entry", "(N1)_12 recovered at infinity", 1e-5, n1_defect),
            self.check("e_analytic", "E continues across (-1-delta, -1)", 1e-8, e_analyticity_defect),
            self.check("e_minus1", "E(-1) against its closed form", 1e-7, e_closed_form_defect),
            self.check("j1_residue", "residue of J1 at -1 against its closed form", 1e-8, residue_defect),
            self.check(
                "matching_leading",
                "P N^-1 - I decays like s^-4/3",
                0.3,
                lambda: matching_order_defect(corrected=False),
            ),
            self.check("matching_corrected", "P N^-1 - I - J1/s^4/3 decays like s^-8/3", 0.3, matching_order_defect),
            self.check(
                "dfds_correction",
                "(E^-1 R1' E)_31 against pi i (C1 - 12 C3)/(32 C1)",
                1e-6,
                lambda: abs(dfds_correction(4.0, params) - dfds_correction_closed_form(4.0, params)),
            ),
            self.check("e_log_derivative", "(E^-1 E')_31 vanishes at -1", 1e-8, lambda: abs(e_log_derivative_31(4.0, params))),
        ]
        return {c.name: c for c in checks}
