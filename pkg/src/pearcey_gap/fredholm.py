"""Nyström discretisation of the Pearcey kernel on (−s, s).

F(s;ρ) = ln det(I − K^Pe) restricted to (−s, s) is computed from the
Nyström matrix A = W^{1/2} K W^{1/2} on a Gauss–Legendre grid. The same LU
factorisation of I − A serves the resolvent, the vectors F⃗ = (I−K)^{-1}f⃗ and
H⃗ = (I−Kᵗ)^{-1}h⃗, and the moment matrices Y₁ and X₁.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from numpy.polynomial.legendre import leggauss

from .errors import DiscretizationError, DomainError
from .kernel import NEAR_DIAGONAL, kernel_matrix, vectors_fh
from .pearcey_fn import PearceyParams, asymptotic_frame
from .quadrature import DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NystromGrid:
    s: float
    m: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def sqrt_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)


@dataclass(frozen=True)
class GapResult:
    s: float
    rho: float
    m: int
    F: float
    est_error: float
    dF_ds: float | None = None
    dF_drho: float | None = None


@dataclass(frozen=True)
class MomentMatrices:
    """Y₁ = ∫F⃗h⃗ᵗ and X₁ = Ψ₁ + Ψ₀⁻¹Y₁Ψ₀."""

    y1: np.ndarray
    x1: np.ndarray


def build_grid(s: float, m: int) -> NystromGrid:
    """Gauss–Legendre rule with m nodes mapped to [−s, s].

    Raises:
        DomainError: If s ≤ 0, or m is odd or below 4.
    """
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    if m < 4 or m % 2:
        raise DomainError(f"m must be an even count ≥ 4, got {m}")
    x, w = leggauss(m)
    return NystromGrid(s=float(s), m=m, nodes=s * x, weights=s * w)


def _half_count(m: int) -> int:
    half = (m // 2) - (m // 2) % 2
    return max(4, half)


def _fh_arrays(nodes: np.ndarray, params: PearceyParams, tol: float) -> tuple[np.ndarray, np.ndarray]:
    pairs = [vectors_fh(float(x), params, tol) for x in nodes]
    return np.array([p.f for p in pairs]), np.array([p.h for p in pairs])


@dataclass
class DiscreteOperator:
    """I − A on a grid, LU-factorised once."""

    grid: NystromGrid
    params: PearceyParams
    a: np.ndarray
    tol: float = DEFAULT_TOLERANCE
    _lu: tuple[np.ndarray, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.a)):
            raise DiscretizationError(f"non-finite kernel entries at s={self.grid.s}, m={self.grid.m}")
        self._lu = scipy.linalg.lu_factor(np.eye(self.grid.m) - self.a, check_finite=False)

    @classmethod
    def assemble(cls, grid: NystromGrid, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> "DiscreteOperator":
        k = kernel_matrix(grid.nodes, grid.nodes, params, NEAR_DIAGONAL, tol)
        d = grid.sqrt_weights
        return cls(grid=grid, params=params, a=d[:, None] * k * d[None, :], tol=tol)

    def logdet(self) -> float:
        """ln det(I − A) from the diagonal of U and the pivot parity.

        Raises:
            DiscretizationError: If the determinant is not positive.
        """
        lu, piv = self._lu
        diag = np.diag(lu)
        if np.any(diag == 0):
            raise DiscretizationError(f"I − A is singular at s={self.grid.s}, m={self.grid.m}")
        swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
        sign = (-1) ** swaps * int(np.prod(np.sign(diag)))
        logger.debug(f"LU at s={self.grid.s}, m={self.grid.m}: {swaps} swaps, sign {sign}")
        if sign <= 0:
            raise DiscretizationError(
                f"det(I − A) ≤ 0 at s={self.grid.s}, m={self.grid.m}; increase m"
            )
        return float(np.sum(np.log(np.abs(diag))))

    def solve(self, rhs: np.ndarray, transpose: bool = False) -> np.ndarray:
        return scipy.linalg.lu_solve(self._lu, rhs, trans=1 if transpose else 0, check_finite=False)


def _operator(s: float, params: PearceyParams, m: int, tol: float) -> DiscreteOperator:
    return DiscreteOperator.assemble(build_grid(s, m), params, tol)


def fredholm_logdet(
    s: float,
    params: PearceyParams,
    m: int,
    tol: float = DEFAULT_TOLERANCE,
    derivatives: bool = False,
) -> GapResult:
    """F(s;ρ) with an embedded error estimate from a half-size grid.

    Args:
        s: Half-length of the gap interval.
        params: Pearcey parameter.
        m: Node count (even, ≥ 4).
        tol: Pearcey quadrature tolerance.
        derivatives: Also fill ∂F/∂s and ∂F/∂ρ from the resolvent identities.

    Returns:
        GapResult: F, |F_m − F_{m/2}| and optionally the derivatives.
    """
    op = _operator(s, params, m, tol)
    value = op.logdet()
    coarse = _operator(s, params, _half_count(m), tol).logdet()
    ds = drho = None
    if derivatives:
        ds = _dF_ds(op)
        drho = _dF_drho(op)
    logger.debug(f"F({s};{params.rho}) = {value:.15g} at m={m}")
    return GapResult(
        s=float(s), rho=params.rho, m=m, F=value, est_error=abs(value - coarse), dF_ds=ds, dF_drho=drho
    )


def trace_series_logdet(
    s: float, params: PearceyParams, n_terms: int, m: int = 20, tol: float = DEFAULT_TOLERANCE
) -> float:
    """−Σ_{n≤n_terms} tr(Aⁿ)/n on the Nyström matrix.

    Raises:
        DiscretizationError: If ‖A‖₂ ≥ 1, where the series diverges.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be positive, got {n_terms}")
    a = DiscreteOperator.assemble(build_grid(s, m), params, tol).a
    norm = float(np.linalg.norm(a, 2))
    if norm >= 1.0:
        raise DiscretizationError(f"trace series diverges: ‖A‖ = {norm:.3f}")
    total = 0.0
    power = np.eye(m)
    for n in range(1, n_terms + 1):
        power = power @ a
        total -= float(np.trace(power)) / n
    return total


@dataclass
class DiscreteResolvent:
    """R = (I − K)⁻¹K evaluated anywhere by Nyström interpolation."""

    op: DiscreteOperator

    def __call__(self, u: float, v: float) -> float:
        grid, params = self.op.grid, self.op.params
        d = grid.sqrt_weights
        row = kernel_matrix(np.array([u]), grid.nodes, params, NEAR_DIAGONAL, self.op.tol)[0]
        col = kernel_matrix(grid.nodes, np.array([v]), params, NEAR_DIAGONAL, self.op.tol)[:, 0]
        direct = kernel_matrix(np.array([u]), np.array([v]), params, NEAR_DIAGONAL, self.op.tol)[0, 0]
        return float(direct + (d * row) @ self.op.solve(d * col))

    def at_nodes(self) -> np.ndarray:
        """R(x_i, x_j) on the grid."""
        d = self.op.grid.sqrt_weights
        a = self.op.a
        k = a / np.outer(d, d)
        return k + (k * d[None, :]) @ self.op.solve(a / d[None, :])


def resolvent(s: float, params: PearceyParams, m: int, tol: float = DEFAULT_TOLERANCE) -> DiscreteResolvent:
    return DiscreteResolvent(_operator(s, params, m, tol))


def _dF_ds(op: DiscreteOperator) -> float:
    r = DiscreteResolvent(op)
    s = op.grid.s
    return -(r(s, s) + r(-s, -s))


def dF_ds(s: float, params: PearceyParams, m: int, tol: float = DEFAULT_TOLERANCE) -> float:
    """∂F/∂s = −R(s,s) − R(−s,−s)."""
    return _dF_ds(_operator(s, params, m, tol))


@dataclass(frozen=True)
class ResolventVectors:
    """F⃗ and H⃗ at the grid nodes, with the off-grid interpolants."""

    op: DiscreteOperator
    f: np.ndarray
    h: np.ndarray
    F: np.ndarray
    H: np.ndarray

    def F_at(self, u: float) -> np.ndarray:
        """F⃗(u) = f⃗(u) + Σ w_k K(u, x_k) F⃗(x_k)."""
        grid = self.op.grid
        row = kernel_matrix(np.array([u]), grid.nodes, self.op.params, NEAR_DIAGONAL, self.op.tol)[0]
        return vectors_fh(u, self.op.params, self.op.tol).f + (row * grid.weights) @ self.F

    def H_at(self, v: float) -> np.ndarray:
        """H⃗(v) = h⃗(v) + Σ w_k K(x_k, v) H⃗(x_k)."""
        grid = self.op.grid
        col = kernel_matrix(grid.nodes, np.array([v]), self.op.params, NEAR_DIAGONAL, self.op.tol)[:, 0]
        return vectors_fh(v, self.op.params, self.op.tol).h + (col * grid.weights) @ self.H


def _vectors(op: DiscreteOperator) -> ResolventVectors:
    grid = op.grid
    d = grid.sqrt_weights
    f, h = _fh_arrays(grid.nodes, op.params, op.tol)
    big_f = op.solve(d[:, None] * f) / d[:, None]
    big_h = op.solve(d[:, None] * h, transpose=True) / d[:, None]
    return ResolventVectors(op=op, f=f, h=h, F=big_f, H=big_h)


def resolvent_vectors(s: float, params: PearceyParams, m: int, tol: float = DEFAULT_TOLERANCE) -> ResolventVectors:
    return _vectors(_operator(s, params, m, tol))


def integrable_resolvent(vectors: ResolventVectors, u: float, v: float) -> complex:
    """R(u,v) = F⃗ᵗ(u)H⃗(v)/(u − v) for u ≠ v."""
    if u == v:
        raise DomainError("integrable form needs u != v")
    return complex(vectors.F_at(u) @ vectors.H_at(v)) / (u - v)


def _y1(vectors: ResolventVectors) -> np.ndarray:
    w = vectors.op.grid.weights
    return (vectors.F * w[:, None]).T @ vectors.h


def _dF_drho(op: DiscreteOperator) -> float:
    y1 = _y1(_vectors(op))
    value = -0.5 * (y1[0, 1] + y1[1, 2])
    if abs(value.imag) > 1e-8 * max(1.0, abs(value)):
        logger.debug(f"dF/drho imaginary residue {value.imag:.2e} at s={op.grid.s}")
    return float(value.real)


def dF_drho(s: float, params: PearceyParams, m: int, tol: float = DEFAULT_TOLERANCE) -> float:
    """∂F/∂ρ = −½∫(F₁h₂ + F₂h₃) over the grid."""
    return _dF_drho(_operator(s, params, m, tol))


def y1_x1_moments(s: float, params: PearceyParams, m: int, tol: float = DEFAULT_TOLERANCE) -> MomentMatrices:
    y1 = _y1(resolvent_vectors(s, params, m, tol))
    frame = asymptotic_frame(params)
    x1 = frame.psi1 + np.linalg.solve(frame.psi0, y1 @ frame.psi0)
    return MomentMatrices(y1=y1, x1=x1)


def y_matrix(vectors: ResolventVectors, z: complex) -> np.ndarray:
    """Y(z) = I − Σ w_i F⃗(x_i)h⃗(x_i)ᵗ/(x_i − z) for z off the grid."""
    grid = vectors.op.grid
    gaps = grid.nodes - z
    if np.any(np.abs(gaps) == 0):
        raise DomainError(f"y_matrix is singular at the node {z}")
    scale = grid.weights / gaps
    return np.eye(3) - (vectors.F * scale[:, None]).T @ vectors.h


def convergence_table(
    s: float, params: PearceyParams, ms: list[int], tol: float = DEFAULT_TOLERANCE
) -> list[tuple[int, float, float]]:
    """Rows (m, F_m, |F_m − F_ref|) with F_ref taken at the largest m."""
    values = {m: _operator(s, params, m, tol).logdet() for m in sorted(set(ms))}
    ref = values[max(values)]
    return [(m, values[m], abs(values[m] - ref)) for m in sorted(values)]


def finite_difference(fn, x: float, h: float) -> float:
    """Central difference (fn(x+h) − fn(x−h))/2h."""
    return (fn(x + h) - fn(x - h)) / (2.0 * h)

