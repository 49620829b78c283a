"""The three-sheeted Riemann surface of w³ − 3w + 2z = 0 and its λ-functions."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .contour import richardson_limit
from .errors import BranchError, DomainError
from .pearcey_fn import OMEGA, PearceyParams

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)

Target = Literal["w", "lambda"]
Point = Literal["-1", "+1", "inf"]


@dataclass(frozen=True)
class SurfaceConstants:
    d0: float
    d1: float
    c0: float
    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class SeriesCheck:
    """Worst relative residual of a truncated series and the empirical order of the dropped term."""

    max_residual: float
    order: float
    expected_order: float


@dataclass(frozen=True)
class DecayMargin:
    re_diff: float
    normalized: float


def surface_constants(s: float, params: PearceyParams) -> SurfaceConstants:
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    rho = params.rho
    s23 = s ** (2 / 3)
    return SurfaceConstants(
        d0=3 * 2 ** (-7 / 3) - (2 * s) ** (-2 / 3) * rho,
        d1=(-2 + (2 / s) ** (2 / 3) * rho) / 8,
        c0=rho / (2 ** (5 / 3) * s23) - 9 / 2 ** (10 / 3),
        c1=SQRT3 / 2 ** (5 / 6) - rho / (SQRT3 * 2 ** (1 / 6) * s23),
        c2=2 ** (2 / 3) / 3 + 2 ** (1 / 3) * rho / (9 * s23),
        c3=7 * rho / (108 * SQRT3 * 2 ** (1 / 6) * s23) - 165 / (108 * SQRT3 * 2 ** (5 / 6)),
    )


def eta_raw(z):
    """η = i(1−z²)^{1/2} − z without cut checks; the smaller root is taken as −1/(a+z)."""
    z = np.asarray(z, dtype=complex)
    a = 1j * np.sqrt(1 - z * z)
    direct = a - z
    other = a + z
    with np.errstate(divide="ignore", invalid="ignore"):
        stable = np.where(np.abs(direct) >= np.abs(other), direct, -1.0 / np.where(other == 0, 1.0, other))
    return stable if stable.ndim else complex(stable)


def _on_cut(z: complex, sheet: int) -> bool:
    if z.imag != 0:
        return False
    if sheet == 1:
        return abs(z.real) > 1
    if sheet == 2:
        return z.real > 1
    return z.real < -1


def eta(z: complex) -> complex:
    """η(z), the root of η² + 2zη + 1 = 0 with arg η ∈ (0, π).

    Raises:
        BranchError: On (−∞,−1) ∪ (1,∞); the branch points ±1 themselves are allowed.
    """
    z = complex(z)
    if _on_cut(z, 1):
        raise BranchError(f"eta is ambiguous on the cut at {z}")
    value = eta_raw(z)
    if abs(value * value + 2 * z * value + 1) > 1e-12 * max(1.0, abs(z) * abs(value)):
        raise BranchError(f"eta({z}) fails its quadratic")
    if value.imag < 0 or (value.imag == 0 and abs(z.real) != 1):
        raise BranchError(f"eta({z}) = {value} left the upper half plane")
    return value


def w_raw(j: int, z):
    """w_j = ω^{j−2}η^{1/3} + ω^{2−j}η^{−1/3} with principal cube roots, vectorised."""
    root = np.power(eta_raw(z), 1 / 3)
    return OMEGA ** (j - 2) * root + OMEGA ** (2 - j) / root


def w(j: int, z: complex) -> complex:
    """The j-th root of w³ − 3w + 2z = 0 on sheet j.

    Raises:
        DomainError: If j is not 1, 2 or 3.
        BranchError: On the sheet's cut.
    """
    if j not in (1, 2, 3):
        raise DomainError(f"sheet must be 1, 2 or 3, got {j}")
    z = complex(z)
    if _on_cut(z, j):
        raise BranchError(f"w_{j} is ambiguous on its cut at {z}")
    value = complex(w_raw(j, z))
    if abs(value**3 - 3 * value + 2 * z) > 1e-12 * max(1.0, abs(value) ** 3):
        raise BranchError(f"w_{j}({z}) fails the cubic")
    return value


def _lambda_coeffs(s: float, rho: float) -> tuple[float, float]:
    return 3 / 4 ** (5 / 3), rho / (2 ** (5 / 3) * s ** (2 / 3)) - 3 / 2 ** (4 / 3)


def lambda_j(j: int, z: complex, s: float, params: PearceyParams) -> complex:
    """λ_j = (3/4^{5/3})w_j⁴ + (ρ/(2^{5/3}s^{2/3}) − 3/2^{4/3})w_j²."""
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    a, b = _lambda_coeffs(s, params.rho)
    wj = w(j, z)
    return a * wj**4 + b * wj**2


def lambda_raw(j: int, z, s: float, rho: float):
    a, b = _lambda_coeffs(s, rho)
    wj = w_raw(j, z)
    return a * wj**4 + b * wj**2


def lambda_star(j: int, z):
    """λ_j without its ρ term, the s → ∞ limit; vectorised, no cut checks."""
    wj = w_raw(j, z)
    return 3 / 4 ** (5 / 3) * wj**4 - 3 / 2 ** (4 / 3) * wj**2


def lambda_prime(j: int, z: complex, s: float, params: PearceyParams) -> complex:
    """dλ_j/dz using dw/dz = −2/(3(w² − 1))."""
    a, b = _lambda_coeffs(s, params.rho)
    wj = w(j, z)
    return (4 * a * wj**3 + 2 * b * wj) * (-2 / (3 * (wj**2 - 1)))


# Truncated series -----------------------------------------------------------


def _w_series_infinity(j: int, z: complex) -> complex:
    u = z ** (1 / 3)
    if j == 1:
        u = u * (OMEGA**2 if z.imag > 0 else OMEGA)
    coeffs = ((1, -(2 ** (1 / 3))), (-1, -(2 ** (-1 / 3))), (-5, 1 / (6 * 2 ** (2 / 3))),
              (-7, -1 / (12 * 2 ** (1 / 3))), (-11, 1 / (18 * 4 ** (1 / 3))))
    return sum(c * u**k for k, c in coeffs)


def _w_series_finite(j: int, point: Point, z: complex) -> complex:
    if point == "-1":
        t = cmath.sqrt(z + 1)
        odd = 1 if j == 1 else -1
        return -1 + odd * math.sqrt(2 / 3) * t + (z + 1) / 9 + odd * 5 / (54 * SQRT6) * t**3
    t = cmath.sqrt(z - 1)
    sign = (1 if j == 1 else -1) * (1 if z.imag > 0 else -1)
    return 1 + sign * 1j * math.sqrt(2 / 3) * t + (z - 1) / 9 - sign * 1j * 5 / (54 * SQRT6) * t**3


def _lambda_series(j: int, point: Point, z: complex, s: float, rho: float) -> complex:
    k = surface_constants(s, PearceyParams(rho))
    s23 = s ** (2 / 3)
    if point == "inf":
        w1, w2 = (1.0, 1.0) if j == 3 else ((OMEGA, OMEGA**2) if z.imag > 0 else (OMEGA**2, OMEGA))
        return (0.75 * w2 * z ** (4 / 3) + rho * w1 / (2 * s23) * z ** (2 / 3) - k.d0
                + k.d1 * w2 * z ** (-2 / 3))
    if point == "-1":
        t = cmath.sqrt(z + 1)
        odd = 1 if j == 1 else -1
        return k.c0 + odd * k.c1 * t + k.c2 * (z + 1) + odd * k.c3 * t**3
    t = cmath.sqrt(z - 1)
    sign = (1 if j == 1 else -1) * (1 if z.imag > 0 else -1)
    return k.c0 - sign * 1j * k.c1 * t - k.c2 * (z - 1) + sign * 1j * k.c3 * t**3


_SERIES_SHEETS: dict[Point, tuple[int, ...]] = {"-1": (1, 3), "+1": (1, 2), "inf": (1, 3)}
_EXPECTED_ORDER: dict[tuple[Target, Point], float] = {
    ("w", "-1"): 2.0,
    ("w", "+1"): 2.0,
    ("w", "inf"): -13 / 3,
    ("lambda", "-1"): 2.0,
    ("lambda", "+1"): 2.0,
    ("lambda", "inf"): -4 / 3,
}


def series_value(target: Target, point: Point, j: int, z: complex, s: float = 1.0,
                 params: PearceyParams | None = None) -> complex:
    """The truncated expansion of w_j or λ_j about ``point`` evaluated at z."""
    if j not in _SERIES_SHEETS[point]:
        raise DomainError(f"no expansion of sheet {j} about {point}")
    rho = params.rho if params is not None else 0.0
    z = complex(z)
    if target == "w":
        return _w_series_infinity(j, z) if point == "inf" else _w_series_finite(j, point, z)
    return _lambda_series(j, point, z, s, rho)


def _sample_points(point: Point, j: int, radius: float) -> list[complex]:
    if point == "-1":
        return [-1 + radius * cmath.exp(1j * a) for a in (0.0, math.pi / 2, -math.pi / 2, 3 * math.pi / 4, -3 * math.pi / 4)]
    if point == "+1":
        return [1 + radius * cmath.exp(1j * a) for a in (math.pi / 4, math.pi / 2, 3 * math.pi / 4,
                                                       -math.pi / 4, -math.pi / 2, -3 * math.pi / 4)]
    angles = (math.pi / 3, 2 * math.pi / 3, -math.pi / 3, -2 * math.pi / 3)
    if j == 3:
        angles += (0.0,)
    return [radius * cmath.exp(1j * a) for a in angles]


def series_check(
    target: Target,
    point: Point,
    j: int,
    s: float = 1.0,
    params: PearceyParams | None = None,
    radii: tuple[float, float] | None = None,
) -> SeriesCheck:
    """Compare direct evaluation with the truncated series on two sample circles."""
    params = params or PearceyParams()
    if radii is None:
        radii = (50.0, 100.0) if point == "inf" else (1e-2, 1e-3)
    worst_rel = 0.0
    abs_by_radius = []
    for radius in radii:
        worst_abs = 0.0
        for z in _sample_points(point, j, radius):
            direct = w(j, z) if target == "w" else lambda_j(j, z, s, params)
            err = abs(direct - series_value(target, point, j, z, s, params))
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / max(1.0, abs(direct)))
        abs_by_radius.append(worst_abs)
    order = math.log(abs_by_radius[0] / abs_by_radius[1]) / math.log(radii[0] / radii[1])
    logger.debug(f"series {target}_{j} at {point}: residual {worst_rel:.2e}, order {order:.3f}")
    return SeriesCheck(max_residual=worst_rel, order=order, expected_order=_EXPECTED_ORDER[(target, point)])


def lambda_constant_at_infinity(
    s: float,
    params: PearceyParams,
    angle: float = math.pi / 3,
    radii: tuple[float, ...] = (50.0, 100.0, 200.0, 400.0),
) -> complex:
    """Constant term of λ₃ at ∞ by extrapolation in |z|^{−2/3} along a ray."""
    rho = params.rho
    s23 = s ** (2 / 3)
    values = []
    for r in radii:
        z = r * cmath.exp(1j * angle)
        values.append(lambda_j(3, z, s, params) - 0.75 * z ** (4 / 3) - rho / (2 * s23) * z ** (2 / 3))
    return complex(richardson_limit([r ** (-2 / 3) for r in radii], values))


# Decay inequalities ---------------------------------------------------------

_DECAY_RAYS: dict[int, tuple[float, float]] = {
    1: (1.0, math.pi / 4),
    2: (-1.0, 3 * math.pi / 4),
    4: (-1.0, -3 * math.pi / 4),
    5: (1.0, -math.pi / 4),
}


def decay_contour(k: int, t: float) -> complex:
    """Point at distance t along the shifted ray Σ_k^{(1)}."""
    if k not in _DECAY_RAYS:
        raise DomainError(f"no decay contour with index {k}")
    base, angle = _DECAY_RAYS[k]
    return base + t * cmath.exp(1j * angle)


def _on_decay_contour(z: complex) -> bool:
    for base, angle in _DECAY_RAYS.values():
        d = (z - base) * cmath.exp(-1j * angle)
        if d.real > 0 and abs(d.imag) < 1e-9 * max(1.0, abs(z)):
            return True
    return False


def decay_margin(z: complex, pair: tuple[int, int], s: float, params: PearceyParams) -> DecayMargin:
    """Re(λ_a − λ_b) at a point of a decay contour, and that value over |z|^{4/3}."""
    z = complex(z)
    if not _on_decay_contour(z):
        raise DomainError(f"{z} is not on a contour Σ_k^(1)")
    a, b = pair
    diff = (lambda_j(a, z, s, params) - lambda_j(b, z, s, params)).real
    return DecayMargin(re_diff=diff, normalized=diff / abs(z) ** (4 / 3))


def sign_chart(
    x_min: float = -4.0,
    x_max: float = 4.0,
    y_min: float = -4.0,
    y_max: float = 4.0,
    nx: int = 81,
    ny: int = 81,
) -> list[tuple[float, float, int, int, int]]:
    """Rows (x, y, sgn Re(λ₁*−λ₂*), sgn Re(λ₁*−λ₃*), sgn Re(λ₂*−λ₃*)) on a grid."""
    xs = np.linspace(x_min, x_max, nx)
    ys = np.linspace(y_min, y_max, ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    z = gx + 1j * gy
    lam = [np.real(lambda_star(j, z)) for j in (1, 2, 3)]
    s12 = np.sign(lam[0] - lam[1]).astype(int)
    s13 = np.sign(lam[0] - lam[2]).astype(int)
    s23 = np.sign(lam[1] - lam[2]).astype(int)
    rows = []
    for i in range(nx):
        for k in range(ny):
            rows.append((float(xs[i]), float(ys[k]), int(s12[i, k]), int(s13[i, k]), int(s23[i, k])))
    return rows
