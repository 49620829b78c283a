"""Small numerical helpers shared by the surface and parametrix modules."""

from collections.abc import Callable, Sequence

import numpy as np
from scipy.interpolate import barycentric_interpolate

from .errors import ContourIntegralError

BOUNDARY_OFFSET = 1e-8


def boundary_value(
    fn: Callable[[complex], np.ndarray | complex],
    z: complex,
    normal: complex,
    offset: float = BOUNDARY_OFFSET,
) -> np.ndarray | complex:
    """Limit of ``fn`` at ``z`` approached along ``normal``.

    Evaluates at offsets ``offset`` and ``2*offset`` and removes the linear term,
    so the returned boundary value is accurate to O(offset**2).

    Args:
        fn: Function analytic on the approach side.
        z: Point on a cut or jump contour.
        normal: Direction of approach (normalised internally).
        offset: Distance of the nearest sample from ``z``.

    Returns:
        The extrapolated one-sided limit.
    """
    n = complex(normal) / abs(normal)
    near = np.asarray(fn(z + offset * n))
    far = np.asarray(fn(z + 2.0 * offset * n))
    return 2.0 * near - far


def circle_nodes(center: complex, radius: float, n_nodes: int) -> np.ndarray:
    """Trapezoid nodes on a circle, offset by half a step so none lies on the real axis."""
    theta = 2.0 * np.pi * (np.arange(n_nodes) + 0.5) / n_nodes
    return center + radius * np.exp(1j * theta)


def laurent_coefficients(
    fn: Callable[[complex], np.ndarray],
    center: complex,
    radius: float = 0.05,
    n_nodes: int = 64,
    orders: Sequence[int] = (-1, 0, 1),
    check: bool = True,
) -> dict[int, np.ndarray]:
    """Laurent coefficients of ``fn`` about ``center`` by the trapezoid rule.

    The k-th coefficient is (1/2πi)∮ fn(ζ)(ζ−center)^{−k−1} dζ. With ``check`` the
    extraction is repeated with half the nodes; a mismatch above 1e−8 relative
    raises ``ContourIntegralError``.
    """

    def _extract(n: int) -> dict[int, np.ndarray]:
        nodes = circle_nodes(center, radius, n)
        values = np.array([np.asarray(fn(complex(z))) for z in nodes])
        offsets = nodes - center
        out: dict[int, np.ndarray] = {}
        for k in orders:
            factors = offsets ** (-k)
            out[k] = np.tensordot(factors, values, axes=(0, 0)) / n
        return out

    coeffs = _extract(n_nodes)
    if check:
        coarse = _extract(n_nodes // 2)
        for k in orders:
            scale = max(1.0, float(np.max(np.abs(coeffs[k])))) * radius ** (-max(k, 0))
            gap = float(np.max(np.abs(coeffs[k] - coarse[k])))
            if gap > 1e-8 * scale:
                raise ContourIntegralError(
                    f"Laurent coefficient of order {k} unstable under node halving: {gap:.3e}"
                )
    return coeffs


def richardson_limit(samples: Sequence[float], values: Sequence[np.ndarray | complex]) -> np.ndarray:
    """Polynomial extrapolation of ``values(u)`` to u = 0.

    ``samples`` are the abscissae u_i (e.g. 1/|z| or |z|^{-2/3}); the interpolating
    polynomial of degree len(samples)−1 is evaluated at 0, entrywise for matrix values.
    """
    stacked = np.stack([np.asarray(v, dtype=complex) for v in values])
    return np.asarray(barycentric_interpolate(np.asarray(samples, dtype=float), stacked, 0.0, axis=0))
