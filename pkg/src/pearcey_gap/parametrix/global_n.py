"""The global parametrix N(z) built on the w-sheets, and its constant matrices."""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..contour import richardson_limit
from ..errors import BranchError
from ..pearcey_fn import L_MINUS, L_PLUS
from ..surface import SQRT3, SQRT6, w

logger = logging.getLogger(__name__)

DET_TOLERANCE = 1e-8

LAM = np.array([[-1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
N_JUMP_RIGHT = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=complex)
N_JUMP_LEFT = np.array([[0, 0, 1], [0, 1, 0], [-1, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class GlobalConstants:
    n0: np.ndarray
    lam: np.ndarray
    ups: np.ndarray
    n1: np.ndarray


@lru_cache(maxsize=1)
def global_constants() -> GlobalConstants:
    """𝒩₀, Λ, Υ = 𝒩₀Λ𝒩₀⁻¹ and the closed form of the 1/z coefficient 𝖭₁."""
    r2 = math.sqrt(2.0)
    n0 = 0.25 * np.diag([4 / 2 ** (1 / 6), SQRT6, 3 * 2 ** (1 / 6)]) @ np.array(
        [[r2 * 1j, 1, -1], [0, 2, 2], [-r2 * 1j, 1, -1]], dtype=complex
    )
    ups = n0 @ LAM @ np.linalg.inv(n0)
    a = 2 ** (-5 / 3)
    b = 5 / (16 * 2 ** (1 / 3))
    n1 = np.array([[0, -a, 0], [-b, 0, a], [0, b, 0]], dtype=complex)
    return GlobalConstants(n0=n0, lam=LAM.copy(), ups=ups, n1=n1)


def _root_factor(value: complex, sheet: int) -> complex:
    # Sheet 1 keeps the principal (1 − w²)^{1/2}; on sheets 2 and 3 the branch is
    # continued from w = ±√3 through −i·w·(1 − 1/w²)^{1/2}.
    if sheet == 1:
        return cmath.sqrt(1 - value * value)
    return -1j * value * cmath.sqrt(1 - 1 / (value * value))


def n_functions(value: complex, sheet: int) -> np.ndarray:
    """(N₁, N₂, N₃) evaluated at a root w on the given sheet."""
    t = _root_factor(value, sheet)
    return np.array(
        [
            (1 - value * value / 3) / t,
            -1j / SQRT6 * (value - value * value / SQRT3) / t,
            -1j / SQRT6 * (value + value * value / SQRT3) / t,
        ],
        dtype=complex,
    )


def _n_unchecked(z: complex) -> np.ndarray:
    k = global_constants()
    columns = [n_functions(w(j, z), j) for j in (1, 3, 2)]
    return k.n0 @ np.column_stack(columns) @ k.lam


@lru_cache(maxsize=1)
def _det_at_origin() -> complex:
    return complex(np.linalg.det(_n_unchecked(0j)))


def global_N(z: complex) -> np.ndarray:
    """N(z) off (−∞, −1] ∪ [1, ∞).

    Raises:
        BranchError: On the real cuts, or if det N(z) drifts from det N(0) by more than
            1e−8 relative (an inconsistent square-root branch).
    """
    z = complex(z)
    if z.imag == 0 and abs(z.real) >= 1:
        raise BranchError(f"N is ambiguous on the real axis at {z}")
    value = _n_unchecked(z)
    reference = _det_at_origin()
    drift = abs(np.linalg.det(value) - reference)
    if drift > DET_TOLERANCE * abs(reference):
        raise BranchError(f"det N({z}) drifted by {drift:.3e} from det N(0)")
    return value


def n_symmetry_defect(z: complex) -> float:
    """max |N(z) − Υ·N(−z)·Λ|."""
    k = global_constants()
    return float(np.max(np.abs(global_N(z) - k.ups @ global_N(-complex(z)) @ k.lam)))


def _normalised(z: complex) -> np.ndarray:
    plus = z.imag > 0
    l_inv = np.linalg.inv(L_PLUS if plus else L_MINUS)
    root = z ** (1 / 3)
    return z * (global_N(z) @ l_inv @ np.diag([root, 1, 1 / root]) - np.eye(3))


def n1_coefficient(
    angle: float = math.pi / 2,
    radii: tuple[float, ...] = (50.0, 100.0, 200.0, 400.0),
) -> np.ndarray:
    """𝖭₁ recovered from N by Richardson extrapolation in 1/|z| along one ray."""
    samples = [cmath.rect(r, angle) for r in radii]
    values = [_normalised(z) for z in samples]
    n1 = richardson_limit([1 / r for r in radii], values)
    logger.debug(f"N1 recovered along arg {angle:.3f}: (1,2) entry {n1[0, 1]:.12g}")
    return n1
