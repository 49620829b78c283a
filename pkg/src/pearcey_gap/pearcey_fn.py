"""Pearcey integrals p_j(z;ρ), the kernel functions p and q, and the matrices Ψ̃ and Ψ."""

import cmath
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, DomainError
from .quadrature import DEFAULT_TOLERANCE, contour_moments

logger = logging.getLogger(__name__)

OMEGA = cmath.exp(2j * math.pi / 3)
ASYMPTOTIC_FLOOR = 5.0

# Valley-to-valley description of the contours Γ_0..Γ_5 (in, out).
CONTOURS: dict[int, tuple[complex, complex]] = {
    0: (-1.0 + 0j, 1.0 + 0j),
    1: (1j, 1.0 + 0j),
    2: (1j, -1.0 + 0j),
    3: (-1j, -1.0 + 0j),
    4: (-1j, 1.0 + 0j),
    5: (-1j, 1j),
}

# The four rays of Σ, grouped into two valley-to-valley legs.
Q_LEGS: tuple[tuple[complex, complex], ...] = (
    (cmath.exp(1j * math.pi / 4), cmath.exp(3j * math.pi / 4)),
    (cmath.exp(5j * math.pi / 4), cmath.exp(7j * math.pi / 4)),
)

# Sector Θ_k -> columns as (sign, contour index).
SECTOR_COLUMNS: dict[int, tuple[tuple[int, int], ...]] = {
    0: ((-1, 2), (1, 1), (1, 5)),
    1: ((1, 0), (1, 1), (1, 4)),
    2: ((-1, 3), (-1, 5), (1, 4)),
    3: ((1, 4), (-1, 5), (1, 3)),
    4: ((1, 0), (1, 2), (1, 3)),
    5: ((1, 1), (1, 2), (1, 5)),
}

RAY_ANGLES: dict[int, float] = {
    0: 0.0,
    1: math.pi / 4,
    2: 3 * math.pi / 4,
    3: math.pi,
    4: -3 * math.pi / 4,
    5: -math.pi / 4,
}

# Ray k -> (sector on the + side, sector on the − side, jump matrix), Ψ₊ = Ψ₋·J.
PSI_JUMPS: dict[int, tuple[int, int, np.ndarray]] = {
    0: (0, 5, np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=complex)),
    1: (1, 0, np.array([[1, 0, 0], [1, 1, 1], [0, 0, 1]], dtype=complex)),
    2: (1, 2, np.array([[1, 0, 0], [0, 1, 0], [1, 1, 1]], dtype=complex)),
    3: (2, 3, np.array([[0, 0, 1], [0, 1, 0], [-1, 0, 0]], dtype=complex)),
    4: (3, 4, np.array([[1, 0, 0], [0, 1, 0], [1, -1, 1]], dtype=complex)),
    5: (5, 4, np.array([[1, 0, 0], [1, 1, -1], [0, 0, 1]], dtype=complex)),
}

L_PLUS = np.array([[-OMEGA, OMEGA**2, 1], [-1, 1, 1], [-(OMEGA**2), OMEGA, 1]], dtype=complex)
L_MINUS = np.array([[OMEGA**2, OMEGA, 1], [1, 1, 1], [OMEGA, OMEGA**2, 1]], dtype=complex)


@dataclass(frozen=True)
class PearceyParams:
    """The Pearcey parameter ρ."""

    rho: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.rho):
            raise DomainError(f"rho must be finite, got {self.rho}")


@dataclass(frozen=True)
class PearceyTriple:
    """Value, first and second derivative of a Pearcey function at a point."""

    p: complex
    dp: complex
    d2p: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.p, self.dp, self.d2p], dtype=complex)

    def scaled(self, factor: complex) -> "PearceyTriple":
        return PearceyTriple(self.p * factor, self.dp * factor, self.d2p * factor)


@dataclass(frozen=True)
class KappaCoeffs:
    """Coefficients of the large-z expansion of p_j; κ₃ is odd in ρ, κ₆ even."""

    kappa3: float
    kappa6: float
    kappa6_tilde: float
    kappa6_hat: float


@dataclass(frozen=True)
class AsymptoticFrame:
    """Constant matrices of the large-z behaviour of Ψ."""

    psi0: np.ndarray
    psi1: np.ndarray
    l_plus: np.ndarray
    l_minus: np.ndarray
    theta: Callable[[int, complex, float], complex]


@dataclass(frozen=True)
class PsiMatrix:
    """3×3 matrix whose columns are (p, p′, p″) triples."""

    m: np.ndarray

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.m))


def _check_index(j: int) -> None:
    if j not in CONTOURS:
        raise DomainError(f"contour index must be in 0..5, got {j}")


def pearcey_moments(j: int, z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> tuple:
    """(p_j, p_j′, p_j″, p_j‴) at z, each from its own quadrature."""
    _check_index(j)
    valley_in, valley_out = CONTOURS[j]
    return contour_moments(-1, float(params.rho), complex(z), valley_in, valley_out, tol).values


def pearcey_p(j: int, z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> PearceyTriple:
    """∫_{Γ_j} (1, is, −s²)·exp(−s⁴/4 − ρs²/2 + isz) ds.

    Raises:
        DomainError: If ``j`` is not a contour index.
        QuadratureError: If the contour integral does not converge.
    """
    m0, m1, m2, _ = pearcey_moments(j, z, params, tol)
    return PearceyTriple(m0, m1, m2)


def _q_moments(y: complex, params: PearceyParams, tol: float) -> np.ndarray:
    total = np.zeros(4, dtype=complex)
    for valley_in, valley_out in Q_LEGS:
        total += np.array(contour_moments(1, float(params.rho), complex(y), valley_in, valley_out, tol).values)
    return total / (2.0 * math.pi)


def pearcey_q(y: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> PearceyTriple:
    """q(y) = (1/2π)∫_Σ exp(t⁴/4 + ρt²/2 + ity) dt with its first two derivatives."""
    m = _q_moments(y, params, tol)
    return PearceyTriple(complex(m[0]), complex(m[1]), complex(m[2]))


def pearcey_pq(x: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> tuple[PearceyTriple, PearceyTriple]:
    """The kernel pair p = p₀/(2π) and q at the same point."""
    return pearcey_p(0, x, params, tol).scaled(1.0 / (2.0 * math.pi)), pearcey_q(x, params, tol)


def q_third_derivative(y: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> complex:
    return complex(_q_moments(y, params, tol)[3])


def kappa_coeffs(params: PearceyParams) -> KappaCoeffs:
    rho = params.rho
    kappa3 = rho**3 / 54 - rho / 6
    kappa6 = rho**6 / 5832 - rho**4 / 162 - rho**2 / 72 + 7 / 36
    return KappaCoeffs(
        kappa3=kappa3,
        kappa6=kappa6,
        kappa6_tilde=kappa6 + rho / 3 * kappa3 - 1 / 3,
        kappa6_hat=kappa6 - kappa3**2 + rho**2 / 9 - 1 / 3,
    )


def _power(z: complex, exponent: float, arg: float | None = None) -> complex:
    """z**exponent on the branch with the given argument (principal by default)."""
    if arg is None:
        arg = cmath.phase(z)
    return cmath.exp(exponent * complex(math.log(abs(z)), arg))


def theta(k: int, z: complex, rho: float, arg: float | None = None) -> complex:
    """θ_k(z;ρ) = (3/4)ω^{2k}z^{4/3} + (ρ/2)ω^k z^{2/3}."""
    return 0.75 * OMEGA ** (2 * k) * _power(z, 4 / 3, arg) + rho / 2 * OMEGA**k * _power(z, 2 / 3, arg)


def asymptotic_frame(params: PearceyParams) -> AsymptoticFrame:
    rho = params.rho
    k = kappa_coeffs(params)
    psi0 = np.array([[1, 0, 0], [0, 1, 0], [k.kappa3 + 2 * rho / 3, 0, 1]], dtype=complex)
    psi1 = np.array(
        [[0, k.kappa3, 0], [k.kappa6_tilde, 0, k.kappa3 + rho / 3], [0, k.kappa6_hat, 0]],
        dtype=complex,
    )
    return AsymptoticFrame(psi0=psi0, psi1=psi1, l_plus=L_PLUS, l_minus=L_MINUS, theta=theta)


def asymptotic_prefactor(rho: float) -> complex:
    return math.sqrt(2 * math.pi / 3) * 1j * math.exp(rho**2 / 6)


def _expansion_triple(
    c: complex, k: int, z: complex, arg: float, rho: float, a: complex, b: complex, terms: int
) -> PearceyTriple:
    w2k, wk = OMEGA ** (2 * k), OMEGA**k

    def zp(e: float) -> complex:
        return _power(z, e, arg)

    a = a if terms >= 2 else 0.0
    b = b if terms >= 3 else 0.0
    th = 0.75 * w2k * zp(4 / 3) + rho / 2 * wk * zp(2 / 3)
    th1 = w2k * zp(1 / 3) + rho / 3 * wk * zp(-1 / 3)
    th2 = w2k / 3 * zp(-2 / 3) - rho / 9 * wk * zp(-4 / 3)
    poly = zp(-1 / 3) + a * zp(-1) + b * zp(-5 / 3)
    poly1 = -zp(-4 / 3) / 3 - a * zp(-2) - 5 / 3 * b * zp(-8 / 3)
    poly2 = 4 / 9 * zp(-7 / 3) + 2 * a * zp(-3) + 40 / 9 * b * zp(-11 / 3)
    scale = c * cmath.exp(th)
    return PearceyTriple(
        p=scale * poly,
        dp=scale * (th1 * poly + poly1),
        d2p=scale * (th2 * poly + 2 * th1 * poly1 + th1**2 * poly + poly2),
    )


def pearcey_asymptotic(
    j: int, z: complex, params: PearceyParams, terms: int = 3, side: int | None = None
) -> PearceyTriple:
    """Large-z expansion of p_j for j ∈ {0, 1, 4}, through the κ₆ correction.

    Args:
        j: Contour index, one of 0, 1, 4.
        z: Evaluation point.
        params: Pearcey parameter.
        terms: Number of bracket terms kept (1, 2 or 3).
        side: For j = 0 on the real axis, +1 or −1 selects the limit from that half plane.

    Raises:
        DomainError: For other contour indices or z = 0.
        BranchError: For j = 0 on the real axis without ``side``.
    """
    if j not in (0, 1, 4):
        raise DomainError(f"no large-z expansion for contour {j}")
    z = complex(z)
    if z == 0:
        raise DomainError("expansion undefined at z = 0")
    if abs(z) < ASYMPTOTIC_FLOOR:
        logger.debug(f"expansion of p_{j} requested at |z|={abs(z):.2f} below the validity floor")
    rho = params.rho
    kap = kappa_coeffs(params)
    c = asymptotic_prefactor(rho)
    arg = cmath.phase(z)
    if j == 0:
        if z.imag != 0:
            upper = z.imag > 0
        elif side is None:
            raise BranchError("p_0 expansion is ambiguous on the real axis; pass side=±1")
        else:
            upper = side > 0
        if upper:
            if z.imag == 0 and z.real < 0:
                arg = math.pi
            return _expansion_triple(-c * OMEGA, 1, z, arg, rho, kap.kappa3 / OMEGA, kap.kappa6 / OMEGA**2, terms)
        if z.imag == 0 and z.real < 0:
            arg = -math.pi
        return _expansion_triple(c * OMEGA**2, 2, z, arg, rho, kap.kappa3 / OMEGA**2, kap.kappa6 / OMEGA**4, terms)
    if j == 1:
        if arg <= -3 * math.pi / 4:
            arg += 2 * math.pi
        return _expansion_triple(c * OMEGA**2, 2, z, arg, rho, kap.kappa3 / OMEGA**2, kap.kappa6 / OMEGA**4, terms)
    if arg <= -math.pi / 4:
        arg += 2 * math.pi
    return _expansion_triple(c, 3, z, arg, rho, kap.kappa3, kap.kappa6, terms)


def psi_tilde(z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> PsiMatrix:
    """Ψ̃(z) with columns (p₀, p₁, p₄)."""
    cols = [pearcey_p(j, z, params, tol).as_array() for j in (0, 1, 4)]
    return PsiMatrix(np.column_stack(cols))


def sector_of(z: complex, tol: float = 1e-13) -> int:
    """Index k of the open sector Θ_k containing z.

    Raises:
        BranchError: If z is 0 or lies on one of the rays Σ_k.
    """
    if z == 0:
        raise BranchError("z = 0 lies on every ray")
    arg = cmath.phase(z)
    for k, angle in RAY_ANGLES.items():
        gap = abs((arg - angle + math.pi) % (2 * math.pi) - math.pi)
        if gap < tol:
            raise BranchError(f"z = {z} lies on the ray Σ_{k}")
    if 0 < arg < math.pi / 4:
        return 0
    if math.pi / 4 < arg < 3 * math.pi / 4:
        return 1
    if arg > 3 * math.pi / 4:
        return 2
    if arg < -3 * math.pi / 4:
        return 3
    if arg < -math.pi / 4:
        return 4
    return 5


def psi_in_sector(k: int, z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> PsiMatrix:
    """The sector-k formula for Ψ evaluated at any z (each p_j is entire)."""
    cols = [sign * pearcey_p(j, z, params, tol).as_array() for sign, j in SECTOR_COLUMNS[k]]
    return PsiMatrix(np.column_stack(cols))


def psi_sector(z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> PsiMatrix:
    """Ψ(z) built from the sector containing z."""
    return psi_in_sector(sector_of(complex(z)), z, params, tol)


def ode_residual(j: int, z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> complex:
    """p_j‴ − z·p_j − ρ·p_j′ with p_j‴ from its own quadrature."""
    m0, m1, _, m3 = pearcey_moments(j, z, params, tol)
    return complex(m3 - z * m0 - params.rho * m1)


def psi_z_residual(z: complex, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> float:
    """Relative residual of ∂Ψ̃/∂z = [[0,1,0],[0,0,1],[z,ρ,0]]·Ψ̃."""
    psi = psi_tilde(z, params, tol).m
    third = np.array([pearcey_moments(j, z, params, tol)[3] for j in (0, 1, 4)])
    derivative = np.vstack([psi[1], psi[2], third])
    coeff = np.array([[0, 1, 0], [0, 0, 1], [z, params.rho, 0]], dtype=complex)
    return float(np.linalg.norm(derivative - coeff @ psi) / np.linalg.norm(psi))


def psi_rho_residual(z: complex, params: PearceyParams, h: float = 1e-4, tol: float = DEFAULT_TOLERANCE) -> float:
    """Relative residual of ∂Ψ̃/∂ρ = ½[[0,0,1],[z,ρ,0],[1,z,ρ]]·Ψ̃ by central differences."""
    rho = params.rho
    up = psi_tilde(z, PearceyParams(rho + h), tol).m
    down = psi_tilde(z, PearceyParams(rho - h), tol).m
    psi = psi_tilde(z, params, tol).m
    coeff = 0.5 * np.array([[0, 0, 1], [z, rho, 0], [1, z, rho]], dtype=complex)
    return float(np.linalg.norm((up - down) / (2 * h) - coeff @ psi) / np.linalg.norm(psi))
