"""Checks on the Pearcey integrals and the matrix Ψ."""

import cmath
import math

import numpy as np

from ..pearcey_fn import (
    PSI_JUMPS,
    RAY_ANGLES,
    PearceyParams,
    pearcey_asymptotic,
    pearcey_moments,
    pearcey_p,
    psi_in_sector,
    psi_rho_residual,
    psi_tilde,
    psi_z_residual,
)
from .base import BaseCheckSet, CheckInfo

ODE_POINTS = (0.5 + 0.5j, -2.0 + 1.0j, 3.0 - 2.0j, 6.0 + 6.0j)
ODE_RHOS = (-1.0, 0.0, 2.0)
# (contour, direction of z) pairs where the frame is dominated by one real saddle.
FRAME_DIRECTIONS = ((0, 1j), (1, -1j), (4, -1j))
FRAME_RADII = (15.0, 30.0, 60.0)


def ode_defect(points=ODE_POINTS, rhos=ODE_RHOS) -> float:
    """Largest relative residual of p‴ = z·p + ρ·p′ over contours and sample points."""
    worst = 0.0
    for rho in rhos:
        params = PearceyParams(rho)
        for z in points:
            for j in (0, 1, 4):
                m0, m1, _, m3 = pearcey_moments(j, z, params)
                scale = max(1.0, abs(m3), abs(z * m0), abs(rho * m1))
                worst = max(worst, abs(m3 - z * m0 - rho * m1) / scale)
    return worst


def psi_jump_defect(radii: tuple[float, ...] = (0.5, 2.0, 5.0), rho: float = 0.0) -> float:
    """Largest relative |Ψ₊ − Ψ₋J| over the six rays, one point per radius."""
    params = PearceyParams(rho)
    worst = 0.0
    for radius in radii:
        for k, (plus, minus, jump) in PSI_JUMPS.items():
            z = radius * cmath.exp(1j * RAY_ANGLES[k])
            upper = psi_in_sector(plus, z, params).m
            lower = psi_in_sector(minus, z, params).m
            scale = max(np.max(np.abs(upper)), np.max(np.abs(lower)))
            worst = max(worst, float(np.max(np.abs(upper - lower @ jump)) / scale))
    return worst


def frame_error_slope(rho: float = 1.0, radii: tuple[float, ...] = FRAME_RADII) -> float:
    """Worst |slope + 2| of log(relative error of the three-term frame) against log|z|."""
    worst = 0.0
    params = PearceyParams(rho)
    for j, direction in FRAME_DIRECTIONS:
        errors = []
        for r in radii:
            z = r * direction
            exact = pearcey_p(j, z, params).p
            errors.append(abs(pearcey_asymptotic(j, z, params, terms=3).p - exact) / abs(exact))
        slope, _ = np.polyfit(np.log(radii), np.log(errors), 1)
        worst = max(worst, abs(slope + 2))
    return worst


def wronskian_defect(points=(0.0, 1.0 + 1.0j, -2.0 + 0.5j, 3.0j), rho: float = 0.0) -> float:
    params = PearceyParams(rho)
    dets = [psi_tilde(z, params).det for z in points]
    return max(abs(d - dets[0]) for d in dets) / abs(dets[0])


class PearceyChecks(BaseCheckSet):
    """ODE, jump and Wronskian checks for the Pearcey functions."""

    suite = "pearcey"

    def get_checks(self) -> dict[str, CheckInfo]:
        checks = [
            self.check("ode", "p_j''' = z p_j + rho p_j' on sample points", 1e-8, ode_defect),
            self.check("psi_jumps", "Psi_+ = Psi_- J on all six rays", 1e-8, psi_jump_defect),
            self.check("wronskian", "det Psi~ independent of z", 1e-9, wronskian_defect),
            self.check("frame_slope", "three-term frame error decays like |z|^-2 on |z| in [15, 60]", 0.3, frame_error_slope),
            self.check(
                "psi_z_ode",
                "dPsi/dz = [[0,1,0],[0,0,1],[z,rho,0]] Psi",
                1e-8,
                lambda: psi_z_residual(1.0 + 0.5j, PearceyParams(0.5)),
            ),
            self.check(
                "psi_rho_ode",
                "dPsi/drho by central differences",
                1e-6,
                lambda: psi_rho_residual(0.7 - 0.3j, PearceyParams(0.5)),
            ),
            self.check(
                "psi_tilde_origin",
                "Psi~(0;0) against its Gamma-function closed form",
                1e-10,
                lambda: float(np.max(np.abs(psi_tilde(0.0, PearceyParams()).m - psi_tilde_origin()))),
            ),
        ]
        return {c.name: c for c in checks}


def psi_tilde_origin() -> np.ndarray:
    """Ψ̃(0; 0) in closed form."""
    a = math.gamma(0.25) / 2**1.5
    b = math.sqrt(math.pi) / 2
    c = 4**-0.25 * math.gamma(0.75)
    return np.array(
        [
            [2 * a, (1 - 1j) * a, (1 + 1j) * a],
            [0, 2j * b, 2j * b],
            [-2 * c, -(1 + 1j) * c, -(1 - 1j) * c],
        ],
        dtype=complex,
    )
