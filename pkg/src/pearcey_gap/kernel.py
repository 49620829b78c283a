"""The Pearcey kernel K^Pe(x, y; ρ) in its Pearcey-integral and Ψ̃ representations."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DiscretizationError, DomainError
from .pearcey_fn import PearceyParams, PearceyTriple, pearcey_pq, psi_tilde
from .quadrature import DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

NEAR_DIAGONAL = 1e-4


@dataclass(frozen=True)
class IntegrableVectors:
    """f = Ψ̃(x)e₁ and h = (1/2πi)Ψ̃(x)^{−t}(0,1,1)ᵗ, so that K(x,y) = fᵗ(x)h(y)/(x−y)."""

    f: np.ndarray
    h: np.ndarray


def _q_derivatives(x: float, q: PearceyTriple, rho: float) -> list[complex]:
    """q, q′, …, q⁽⁵⁾ at x, the higher ones reduced with q‴ = −xq + ρq′."""
    q0, q1, q2 = q.p, q.dp, q.d2p
    q3 = -x * q0 + rho * q1
    q4 = -q0 - x * q1 + rho * q2
    q5 = -2 * q1 - x * q2 + rho * q3
    return [q0, q1, q2, q3, q4, q5]


def _numerator(p: PearceyTriple, q: PearceyTriple, rho: float) -> complex:
    return p.p * q.d2p - p.dp * q.dp + p.d2p * q.p - rho * p.p * q.p


def _taylor(x: float, y: float, p: PearceyTriple, q: PearceyTriple, rho: float) -> complex:
    """Second-order expansion of the difference quotient around y = x (p and q both at x)."""
    qd = _q_derivatives(x, q, rho)
    n = [p.p * qd[k + 2] - p.dp * qd[k + 1] + (p.d2p - rho * p.p) * qd[k] for k in (1, 2, 3)]
    delta = y - x
    return -(n[0] + n[1] * delta / 2 + n[2] * delta**2 / 6)


def numerator(x: float, y: float, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> complex:
    """p(x)q″(y) − p′(x)q′(y) + p″(x)q(y) − ρp(x)q(y)."""
    p, _ = pearcey_pq(x, params, tol)
    _, q = pearcey_pq(y, params, tol)
    return _numerator(p, q, params.rho)


def kernel_diag(x: float, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> float:
    """K(x, x) = x·p·q + p′q″ − p″q′."""
    p, q = pearcey_pq(x, params, tol)
    return float((x * p.p * q.p + p.dp * q.d2p - p.d2p * q.dp).real)


def kernel_bh(
    x: float,
    y: float,
    params: PearceyParams,
    threshold: float = NEAR_DIAGONAL,
    tol: float = DEFAULT_TOLERANCE,
) -> float:
    """K(x, y) from p and q; a Taylor branch takes over when |x − y| < ``threshold``."""
    p, q_at_x = pearcey_pq(x, params, tol)
    if abs(x - y) < threshold:
        return float(_taylor(x, y, p, q_at_x, params.rho).real)
    _, q = pearcey_pq(y, params, tol)
    return float((_numerator(p, q, params.rho) / (x - y)).real)


def kernel_rh(
    x: float,
    y: float,
    params: PearceyParams,
    tol: float = DEFAULT_TOLERANCE,
    return_complex: bool = False,
) -> float | complex:
    """(1/2πi(x−y))·(0,1,1)·Ψ̃⁻¹(y)·Ψ̃(x)·(1,0,0)ᵗ.

    Returns:
        float: The real part, unless ``return_complex`` is set.

    Raises:
        DomainError: If x == y.
        DiscretizationError: If Ψ̃(y) is numerically singular.
    """
    if x == y:
        raise DomainError("kernel_rh needs x != y; use kernel_diag on the diagonal")
    row = _row_vector(y, params, tol)
    column = psi_tilde(x, params, tol).m[:, 0]
    value = complex(row @ column) / (2j * math.pi * (x - y))
    if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
        logger.debug(f"kernel_rh({x}, {y}) imaginary residue {value.imag:.2e}")
    return value if return_complex else value.real


def _row_vector(y: float, params: PearceyParams, tol: float) -> np.ndarray:
    psi = psi_tilde(y, params, tol).m
    try:
        return np.linalg.solve(psi.T, np.array([0, 1, 1], dtype=complex))
    except np.linalg.LinAlgError as e:
        raise DiscretizationError(f"Ψ̃({y}) is singular: {e}") from e


def vectors_fh(x: float, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> IntegrableVectors:
    f = psi_tilde(x, params, tol).m[:, 0].copy()
    h = _row_vector(x, params, tol) / (2j * math.pi)
    return IntegrableVectors(f=f, h=h)


def symmetry_defect(x: float, y: float, params: PearceyParams, tol: float = DEFAULT_TOLERANCE) -> float:
    """|K(x,y) − K(y,x)|, a diagnostic only."""
    return abs(kernel_bh(x, y, params, tol=tol) - kernel_bh(y, x, params, tol=tol))


def kernel_matrix(
    xs: np.ndarray,
    ys: np.ndarray,
    params: PearceyParams,
    threshold: float = NEAR_DIAGONAL,
    tol: float = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """K(x_i, y_j) for all pairs; one Pearcey evaluation per distinct point."""
    rho = params.rho
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    px = [pearcey_pq(float(x), params, tol)[0] for x in xs]
    qy = [pearcey_pq(float(y), params, tol)[1] for y in ys]
    p_arr = np.array([[t.p, t.dp, t.d2p] for t in px])
    q_arr = np.array([[t.p, t.dp, t.d2p] for t in qy])
    num = (
        np.outer(p_arr[:, 0], q_arr[:, 2])
        - np.outer(p_arr[:, 1], q_arr[:, 1])
        + np.outer(p_arr[:, 2] - rho * p_arr[:, 0], q_arr[:, 0])
    )
    diff = xs[:, None] - ys[None, :]
    near = np.abs(diff) < threshold
    safe = np.where(near, 1.0, diff)
    out = num / safe
    for i, j in zip(*np.nonzero(near)):
        q_at_x = pearcey_pq(float(xs[i]), params, tol)[1]
        out[i, j] = _taylor(float(xs[i]), float(ys[j]), px[i], q_at_x, rho)
    return out.real
