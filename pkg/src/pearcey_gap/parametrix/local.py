"""Local parametrices near ±1: conformal maps, the prefactor E and P^{(±1)}."""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..contour import laurent_coefficients
from ..errors import BranchError, DomainError
from ..pearcey_fn import PearceyParams
from ..surface import SQRT3, lambda_prime, lambda_raw, surface_constants
from .bessel import embed, phi_bessel_scaled
from .global_n import global_constants, global_N

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 1 / 3
LOCAL_RAY_ANGLE = 3 * math.pi / 4
SIGMA3_JUMP = np.array([[0, 0, 1], [0, 1, 0], [-1, 0, 0]], dtype=complex)
_E_MIXER = np.array([[1, 0, -1j], [0, math.sqrt(2), 0], [-1j, 0, 1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class ScriptFactors:
    """𝒜(z) = e^{a_exponent}·a_hat and the embedded Bessel matrix ℬ at ζ = s^{8/3}f(z)."""

    a_exponent: complex
    a_hat: np.ndarray
    b_matrix: np.ndarray

    @property
    def a_matrix(self) -> np.ndarray:
        return cmath.exp(self.a_exponent) * self.a_hat


def require_in_disk(z: complex, center: float, delta: float) -> None:
    if abs(z - center) > delta * (1 + 1e-12):
        raise DomainError(f"z = {z} lies outside the disk of radius {delta} about {center}")


def _phase_gap(z: complex, s: float, rho: float, first: int, second: int) -> complex:
    return lambda_raw(first, z, s, rho) - lambda_raw(second, z, s, rho)


def conformal_f(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> complex:
    """f(z) = (λ₁ − λ₃)²/4 on the disk about −1; analytic across the real cut."""
    z = complex(z)
    require_in_disk(z, -1.0, delta)
    return complex(_phase_gap(z, s, params.rho, 1, 3) ** 2 / 4)


def conformal_f_tilde(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> complex:
    """f̃(z) = (λ₁ − λ₂)²/4 on the disk about +1.

    Raises:
        DomainError: Outside the disk.
        BranchError: If f̃(z) and f(−z) disagree beyond 1e−12.
    """
    z = complex(z)
    require_in_disk(z, 1.0, delta)
    value = complex(_phase_gap(z, s, params.rho, 1, 2) ** 2 / 4)
    mirror = conformal_f(-z, s, params, delta)
    if abs(value - mirror) > 1e-12 * max(1.0, abs(value)):
        raise BranchError(f"f~({z}) = {value} differs from f({-z}) = {mirror}")
    return value


def f_taylor(s: float, params: PearceyParams, radius: float = 0.05, n_nodes: int = 64) -> tuple[complex, complex]:
    """First two Taylor coefficients of f at −1; they equal C₁² and 2C₁C₃."""
    coeffs = laurent_coefficients(
        lambda z: conformal_f(z, s, params), -1.0, radius, n_nodes, orders=(1, 2)
    )
    return complex(coeffs[1]), complex(coeffs[2])


def prefactor_E(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """E(z) = N(z)·mixer·diag(√π s^{2/3} f^{1/4}, 1, f^{−1/4}/(√π s^{2/3})) with principal f^{1/4}.

    Raises:
        DomainError: Outside the disk or at −1 itself.
        BranchError: On the real axis left of −1; use one-sided limits there.
    """
    z = complex(z)
    if z == -1:
        raise DomainError("E is evaluated at -1 only through its limit")
    f = conformal_f(z, s, params, delta)
    quarter = f**0.25
    scale = math.sqrt(math.pi) * s ** (2 / 3)
    return global_N(z) @ _E_MIXER @ np.diag([scale * quarter, 1.0, 1 / (scale * quarter)])


def _e_coefficients(s: float, params: PearceyParams, radius: float, n_nodes: int) -> dict[int, np.ndarray]:
    return laurent_coefficients(
        lambda z: prefactor_E(z, s, params), -1.0, radius, n_nodes, orders=(0, 1)
    )


def e_at_minus1(s: float, params: PearceyParams, radius: float = 0.05, n_nodes: int = 64) -> np.ndarray:
    """E(−1) as the mean of E over a small circle."""
    return _e_coefficients(s, params, radius, n_nodes)[0]


def e_prime_at_minus1(s: float, params: PearceyParams, radius: float = 0.05, n_nodes: int = 64) -> np.ndarray:
    return _e_coefficients(s, params, radius, n_nodes)[1]


def e_at_minus1_closed_form(s: float, params: PearceyParams) -> np.ndarray:
    c1 = surface_constants(s, params).c1
    c = math.sqrt(c1 * math.pi) * s ** (2 / 3)
    q = 3**0.25
    r = 3**1.25
    return np.array(
        [
            [-1j * 2 ** (1 / 12) * q * c, -(2 ** (1 / 3)) / SQRT3, -1 / (2 ** (5 / 12) * r * c)],
            [-1j * 2 ** (-1 / 4) * q * c, 2 / SQRT3, 5 / (2 ** 0.75 * r * c)],
            [1j * q * c / 2 ** (19 / 12), -5 / (2 ** (4 / 3) * SQRT3), 25 / (2 ** (25 / 12) * r * c)],
        ],
        dtype=complex,
    )


def e_prime_col1_closed_form(s: float, params: PearceyParams) -> np.ndarray:
    """First column of E′(−1); the other entries have no closed form to compare against."""
    k = surface_constants(s, params)
    scale = math.sqrt(math.pi) * s ** (2 / 3) / (3**0.75 * math.sqrt(k.c1))
    return scale * np.array(
        [
            -1j * (13 * k.c1 + 108 * k.c3) / (36 * 2 ** (11 / 12)),
            1j * (35 * k.c1 - 108 * k.c3) / (72 * 2**0.25),
            -1j * (83 * k.c1 - 108 * k.c3) / (144 * 2 ** (7 / 12)),
        ],
        dtype=complex,
    )


def _local_minus(z: complex, s: float, params: PearceyParams, delta: float) -> np.ndarray:
    rho = params.rho
    s43 = s ** (4 / 3)
    f = conformal_f(z, s, params, delta)
    zeta = s ** (8 / 3) * f
    root = cmath.sqrt(zeta)
    half_gap = s43 * _phase_gap(z, s, rho, 1, 3) / 2
    # The scaled Bessel matrix carries e^{∓root}; re-express it against the λ-phase.
    shift = root - half_gap
    if abs(shift) > 1e-8 * max(1.0, abs(root)):
        logger.debug(f"principal root differs from the λ-phase at z={z}: shift {shift:.6g}")
    b_hat = embed(phi_bessel_scaled(0.0, zeta, LOCAL_RAY_ANGLE))
    exponential = np.diag([cmath.exp(shift), 1.0, cmath.exp(-shift)])
    if abs(cmath.phase(f)) < LOCAL_RAY_ANGLE:
        tri = np.eye(3, dtype=complex)
        tri[2, 1] = cmath.exp(s43 * _phase_gap(z, s, rho, 3, 2))
    else:
        tri = np.eye(3, dtype=complex)
    return prefactor_E(z, s, params, delta) @ b_hat @ exponential @ tri


def local_P(sign: int, z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """Local parametrix P^{(sign)}(z) in the disk about ``sign``.

    P^{(1)} is obtained from P^{(−1)} through Υ·P^{(−1)}(−z)·Λ.

    Raises:
        DomainError: For sign not ±1, z outside the disk, or z at the centre.
        BranchError: On a local jump contour, including |arg f| = 3π/4.
    """
    if sign not in (-1, 1):
        raise DomainError(f"sign must be -1 or +1, got {sign}")
    z = complex(z)
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    local_z = z if sign == -1 else -z
    if local_z == -1:
        raise DomainError("the local parametrix is singular at its centre")
    value = _local_minus(local_z, s, params, delta)
    if sign == -1:
        return value
    k = global_constants()
    return k.ups @ value @ k.lam


def lambda_123_at_minus1(s: float, params: PearceyParams) -> complex:
    """λ₁ + λ₃ − 2λ₂ at z = −1."""
    rho = params.rho
    return complex(lambda_raw(1, -1.0, s, rho) + lambda_raw(3, -1.0, s, rho) - 2 * lambda_raw(2, -1.0, s, rho))


def lambda_123_closed_form(s: float, params: PearceyParams) -> float:
    return -9 / 2 ** (7 / 3) - 3 * params.rho / (2 ** (2 / 3) * s ** (2 / 3))


def script_factors(z: complex, s: float, params: PearceyParams, delta: float = DEFAULT_DELTA) -> ScriptFactors:
    """𝒜(z) in log-scaled form and ℬ(s^{8/3}f(z)).

    Raises:
        BranchError: Unless |arg f| < 3π/4.
    """
    z = complex(z)
    rho = params.rho
    f = conformal_f(z, s, params, delta)
    if not abs(cmath.phase(f)) < LOCAL_RAY_ANGLE:
        raise BranchError(f"|arg f({z})| is not below 3π/4")
    s43 = s ** (4 / 3)
    g = s43 * (lambda_raw(1, z, s, rho) + lambda_raw(3, z, s, rho)) / 2
    diff = s43 * lambda_raw(2, z, s, rho) - g
    a_hat = np.array([[1, 0, 0], [0, cmath.exp(diff), 0], [0, 1, 1]], dtype=complex)
    zeta = s ** (8 / 3) * f
    b_matrix = embed(phi_bessel_scaled(0.0, zeta, LOCAL_RAY_ANGLE)) @ np.diag(
        [cmath.exp(cmath.sqrt(zeta)), 1.0, cmath.exp(-cmath.sqrt(zeta))]
    )
    return ScriptFactors(a_exponent=complex(g), a_hat=a_hat, b_matrix=b_matrix)


def a_log_derivative(z: complex, s: float, params: PearceyParams) -> np.ndarray:
    """𝒜⁻¹𝒜′ = g′·I + Â⁻¹Â′; only the diagonal and the (3,2) entry are non-zero."""
    s43 = s ** (4 / 3)
    d1, d2, d3 = (lambda_prime(j, z, s, params) for j in (1, 2, 3))
    g_prime = s43 * (d1 + d3) / 2
    diff_prime = s43 * d2 - g_prime
    out = g_prime * np.eye(3, dtype=complex)
    out[1, 1] += diff_prime
    out[2, 1] = -diff_prime
    return out
