"""Modified Bessel functions and the 2×2 Bessel model solution Φ."""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import BranchError, DomainError

logger = logging.getLogger(__name__)

DEFAULT_RAY_ANGLE = 2 * math.pi / 3
RAY_TOLERANCE = 1e-13


@dataclass(frozen=True)
class BesselPair:
    """I_α, K_α and their derivatives at one complex argument."""

    i_val: complex
    k_val: complex
    di_val: complex
    dk_val: complex

    def wronskian(self) -> complex:
        return self.i_val * self.dk_val - self.di_val * self.k_val


def _check_alpha(alpha: float) -> None:
    if not -1.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [-1, 1], got {alpha}")


def _pair(alpha: float, u: complex, scaled: bool) -> BesselPair:
    if scaled:
        # ive carries exp(−|Re u|); the remaining phase makes it I·e^{−u}.
        phase = cmath.exp(-1j * u.imag)
        i0, i1 = (complex(special.ive(a, u)) * phase for a in (alpha, alpha + 1))
        k0, k1 = (complex(special.kve(a, u)) for a in (alpha, alpha + 1))
    else:
        i0, i1 = (complex(special.iv(a, u)) for a in (alpha, alpha + 1))
        k0, k1 = (complex(special.kv(a, u)) for a in (alpha, alpha + 1))
    return BesselPair(
        i_val=i0,
        k_val=k0,
        di_val=i1 + alpha / u * i0,
        dk_val=-k1 + alpha / u * k0,
    )


def modified_bessel(alpha: float, zeta: complex) -> BesselPair:
    """I_α(ζ), K_α(ζ) and their ζ-derivatives.

    Args:
        alpha: Order in [−1, 1].
        zeta: Argument with |arg ζ| < π.

    Raises:
        DomainError: For α outside [−1, 1].
        BranchError: For ζ = 0 or ζ on the negative real axis.
    """
    _check_alpha(alpha)
    zeta = complex(zeta)
    if zeta == 0 or (zeta.imag == 0 and zeta.real < 0):
        raise BranchError(f"modified Bessel functions are ambiguous at {zeta}")
    return _pair(alpha, zeta, scaled=False)


def _angle_gap(arg: float, angle: float) -> float:
    return abs((arg - angle + math.pi) % (2 * math.pi) - math.pi)


def bessel_sector(z: complex, ray_angle: float = DEFAULT_RAY_ANGLE) -> int:
    """1 for |arg z| < ray_angle, 2 above the upper ray, 3 below the lower ray.

    Raises:
        BranchError: At 0, on either ray or on the negative axis.
    """
    if z == 0:
        raise BranchError("z = 0 lies on every ray")
    arg = cmath.phase(z)
    for angle in (ray_angle, -ray_angle, math.pi):
        if _angle_gap(arg, angle) < RAY_TOLERANCE:
            raise BranchError(f"z = {z} lies on a Bessel ray")
    if abs(arg) < ray_angle:
        return 1
    return 2 if arg > 0 else 3


def _phi_sector_one(alpha: float, u: complex, pair: BesselPair) -> np.ndarray:
    return np.array(
        [
            [pair.i_val, 1j / math.pi * pair.k_val],
            [math.pi * 1j * u * pair.di_val, -u * pair.dk_val],
        ],
        dtype=complex,
    )


def _sector_factor(alpha: float, sector: int, decay: complex = 1.0) -> np.ndarray:
    if sector == 2:
        return np.array([[1, 0], [-cmath.exp(1j * math.pi * alpha) * decay, 1]], dtype=complex)
    if sector == 3:
        return np.array([[1, 0], [cmath.exp(-1j * math.pi * alpha) * decay, 1]], dtype=complex)
    return np.eye(2, dtype=complex)


def phi_bessel(alpha: float, z: complex, ray_angle: float = DEFAULT_RAY_ANGLE) -> np.ndarray:
    """The sector-wise Bessel model solution Φ(z) with principal z^{1/2}."""
    _check_alpha(alpha)
    z = complex(z)
    sector = bessel_sector(z, ray_angle)
    u = cmath.sqrt(z)
    return _phi_sector_one(alpha, u, _pair(alpha, u, scaled=False)) @ _sector_factor(alpha, sector)


def phi_bessel_scaled(alpha: float, z: complex, ray_angle: float = DEFAULT_RAY_ANGLE) -> np.ndarray:
    """Φ(z)·diag(e^{−√z}, e^{√z}), free of overflow for large |z|."""
    _check_alpha(alpha)
    z = complex(z)
    sector = bessel_sector(z, ray_angle)
    u = cmath.sqrt(z)
    scaled = _phi_sector_one(alpha, u, _pair(alpha, u, scaled=True))
    return scaled @ _sector_factor(alpha, sector, decay=cmath.exp(-2 * u))


def phi_bessel_derivative(alpha: float, z: complex, ray_angle: float = DEFAULT_RAY_ANGLE) -> np.ndarray:
    """dΦ/dz, using the Bessel equation to eliminate second derivatives."""
    _check_alpha(alpha)
    z = complex(z)
    sector = bessel_sector(z, ray_angle)
    u = cmath.sqrt(z)
    pair = _pair(alpha, u, scaled=False)
    ratio = 1 + alpha**2 / z
    derivative = np.array(
        [
            [pair.di_val / (2 * u), 1j / math.pi * pair.dk_val / (2 * u)],
            [0.5j * math.pi * ratio * pair.i_val, -0.5 * ratio * pair.k_val],
        ],
        dtype=complex,
    )
    return derivative @ _sector_factor(alpha, sector)


def embed(phi: np.ndarray) -> np.ndarray:
    """Place a 2×2 matrix on rows and columns 1 and 3 of the 3×3 identity."""
    out = np.eye(3, dtype=complex)
    out[np.ix_([0, 2], [0, 2])] = phi
    return out


def b_log_derivative_31(alpha: float, zeta: complex, ray_angle: float = DEFAULT_RAY_ANGLE) -> complex:
    """(ℬ⁻¹ℬ′)₃₁ for the embedded Bessel solution; tends to πi/2 as ζ → 0 when α = 0."""
    phi = phi_bessel(alpha, zeta, ray_angle)
    dphi = phi_bessel_derivative(alpha, zeta, ray_angle)
    return complex(phi[0, 0] * dphi[1, 0] - phi[1, 0] * dphi[0, 0])


def infinity_defect(alpha: float, z: complex) -> float:
    """Largest entry of (π²z)^{σ₃/4}·Φ(z)e^{−√zσ₃} minus its two-term expansion at ∞."""
    z = complex(z)
    u = cmath.sqrt(z)
    scaled = phi_bessel_scaled(alpha, z)
    quarter = (math.pi**2 * z) ** 0.25
    normalised = np.diag([quarter, 1 / quarter]) @ scaled
    correction = np.array(
        [[-1 - 4 * alpha**2, -2j], [-2j, 1 + 4 * alpha**2]],
        dtype=complex,
    ) / (8 * u)
    expected = np.array([[1, 1j], [1j, 1]], dtype=complex) / math.sqrt(2) @ (np.eye(2) + correction)
    return float(np.max(np.abs(normalised - expected)))
