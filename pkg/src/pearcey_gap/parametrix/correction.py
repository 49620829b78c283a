"""First-order correction J₁ of the local parametrices and the resulting R₁."""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..contour import boundary_value, laurent_coefficients
from ..pearcey_fn import PearceyParams
from ..surface import SQRT6, surface_constants
from .global_n import global_constants, global_N
from .local import (
    DEFAULT_DELTA,
    conformal_f,
    e_at_minus1,
    e_prime_at_minus1,
    local_P,
    require_in_disk,
)

logger = logging.getLogger(__name__)

_J1_CORE = np.array([[-1, 0, -2j], [0, 0, 0], [-2j, 0, 1]], dtype=complex)


@dataclass(frozen=True)
class J1Pair:
    """J₁^{(−1)} at a point and J₁^{(1)} at its mirror image."""

    minus: np.ndarray
    plus: np.ndarray


@dataclass(frozen=True)
class J1Laurent:
    """Coefficients of J₁^{(−1)} about −1 at orders −1, 0 and 1."""

    minus1: np.ndarray
    zero: np.ndarray
    one: np.ndarray


def j1_minus(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """J₁^{(−1)}(z) = N(z)·core·N(z)⁻¹ / (8 f(z)^{1/2})."""
    z = complex(z)
    n = global_N(z)
    root = cmath.sqrt(conformal_f(z, s, params, delta))
    return n @ _J1_CORE @ np.linalg.inv(n) / (8 * root)


def j1_plus(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """J₁^{(1)}(z) = Υ·J₁^{(−1)}(−z)·Υ on the disk about +1."""
    ups = global_constants().ups
    return ups @ j1_minus(-complex(z), s, params, delta) @ ups


def j1_matrices(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> J1Pair:
    """J₁^{(−1)} at z together with J₁^{(1)} at the mirror point −z."""
    z = complex(z)
    return J1Pair(minus=j1_minus(z, s, params, delta), plus=j1_plus(-z, s, params, delta))


def j1_laurent(s: float, params: PearceyParams, radius: float = 0.05, n_nodes: int = 64) -> J1Laurent:
    coeffs = laurent_coefficients(lambda z: j1_minus(z, s, params), -1.0, radius, n_nodes)
    return J1Laurent(minus1=coeffs[-1], zero=coeffs[0], one=coeffs[1])


def j_minus1_closed_form(s: float, params: PearceyParams) -> np.ndarray:
    c1 = surface_constants(s, params).c1
    return np.array(
        [
            [1, -(2 ** (4 / 3)), -(2 ** (5 / 3))],
            [2 ** (-1 / 3), -2, -(2 ** (4 / 3))],
            [-(2 ** (-5 / 3)), 2 ** (-1 / 3), 1],
        ],
        dtype=complex,
    ) / (16 * SQRT6 * c1)


@dataclass
class R1Data:
    """R₁(z) assembled from the residues of J₁^{(±1)} at ∓1."""

    s: float
    params: PearceyParams
    laurent: J1Laurent
    residue_plus: np.ndarray
    delta: float = DEFAULT_DELTA

    @property
    def residue_minus(self) -> np.ndarray:
        return self.laurent.minus1

    def outer(self, z: complex) -> np.ndarray:
        return self.residue_minus / (z + 1) + self.residue_plus / (z - 1)

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        value = self.outer(z)
        if abs(z + 1) < self.delta:
            return value - j1_minus(z, self.s, self.params, self.delta)
        if abs(z - 1) < self.delta:
            return value - j1_plus(z, self.s, self.params, self.delta)
        return value

    @property
    def derivative_at_minus1(self) -> np.ndarray:
        """R₁′(−1) = −𝒥₁ − Res₊₁/4."""
        return -self.laurent.one - self.residue_plus / 4

    @property
    def leading(self) -> np.ndarray:
        """𝖱₁, the 1/z coefficient of R at infinity."""
        return (self.residue_minus + self.residue_plus) / self.s ** (4 / 3)


def r1_data(
    s: float, params: PearceyParams, radius: float = 0.05, n_nodes: int = 64, delta: float = DEFAULT_DELTA
) -> R1Data:
    """Residues and Laurent data of J₁^{(±1)} packaged as an R₁ evaluator.

    Raises:
        DomainError: For s ≤ 0.
        ContourIntegralError: If the Laurent extraction is unstable.
    """
    surface_constants(s, params)
    laurent = j1_laurent(s, params, radius, n_nodes)
    ups = global_constants().ups
    residue_plus = -ups @ laurent.minus1 @ ups
    logger.debug(f"R1 data at s={s}, rho={params.rho}: |J_-1| = {np.max(np.abs(laurent.minus1)):.6g}")
    return R1Data(s=s, params=params, laurent=laurent, residue_plus=residue_plus, delta=delta)


def r1_jump_defect(data: R1Data, angle: float = math.pi / 3, offset: float = 1e-8) -> float:
    """|R₁(outside) − R₁(inside) − J₁^{(−1)}| at one point of the circle about −1."""
    z = -1 + data.delta * cmath.exp(1j * angle)
    unit = cmath.exp(1j * angle)
    outside = boundary_value(data, z, unit, offset)
    inside = boundary_value(data, z, -unit, offset)
    jump = j1_minus(z, data.s, data.params, data.delta)
    return float(np.max(np.abs(outside - inside - jump)))


def dfds_correction(s: float, params: PearceyParams, data: R1Data | None = None) -> complex:
    """(E(−1)⁻¹·R₁′(−1)·E(−1))₃₁ / s^{4/3}."""
    if data is None:
        data = r1_data(s, params)
    e = e_at_minus1(s, params)
    return complex((np.linalg.inv(e) @ data.derivative_at_minus1 @ e)[2, 0] / s ** (4 / 3))


def dfds_correction_closed_form(s: float, params: PearceyParams) -> complex:
    k = surface_constants(s, params)
    return complex(math.pi * 1j * (k.c1 - 12 * k.c3) / (32 * k.c1))


def e_log_derivative_31(s: float, params: PearceyParams) -> complex:
    """(E⁻¹E′)₃₁ at −1; it vanishes."""
    return complex((np.linalg.inv(e_at_minus1(s, params)) @ e_prime_at_minus1(s, params))[2, 0])


def matching_defect(
    s: float,
    params: PearceyParams,
    z: complex = -1 + DEFAULT_DELTA,
    corrected: bool = True,
) -> float:
    """‖P^{(−1)}N⁻¹ − I‖ at z on the disk boundary, less J₁^{(−1)}/s^{4/3} when ``corrected``."""
    z = complex(z)
    require_in_disk(z, -1.0, DEFAULT_DELTA)
    defect = local_P(-1, z, s, params) @ np.linalg.inv(global_N(z)) - np.eye(3)
    if corrected:
        defect = defect - j1_minus(z, s, params) / s ** (4 / 3)
    return float(np.linalg.norm(defect, 2))
