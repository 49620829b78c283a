"""Composite Gauss–Legendre quadrature along Pearcey-type contours.

An integrand exp(sign·(s⁴/4 + ρs²/2) + i·s·z) decays in four valleys at infinity.
Every contour used by the library runs from one valley to another; the path is a
polyline through pivot points (the origin or saddle points of the phase) followed
by straight rays into the two valleys. Among the candidate polylines the one with
the smallest peak integrand is integrated, which keeps recessive values accurate.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import QuadratureError

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 20
DEFAULT_TOLERANCE = 1e-12
DECAY_MARGIN = 45.0
MAX_BISECTIONS = 4
N_MOMENTS = 4
# Straight rays from the origin are kept unless a saddle path lowers the peak by more than this.
ORIGIN_PREFERENCE = 1.0


@dataclass(frozen=True)
class QuarticPhase:
    """Phase sign·(s⁴/4 + ρs²/2) + i·s·z of a Pearcey-type integrand."""

    sign: int
    rho: float
    z: complex

    def __call__(self, s: np.ndarray | complex) -> np.ndarray | complex:
        return self.sign * (s**4 / 4.0 + self.rho * s**2 / 2.0) + 1j * s * self.z

    def saddles(self) -> np.ndarray:
        """Roots of the phase derivative, s³ + ρs + sign·i·z = 0."""
        return np.roots([1.0, 0.0, self.rho, 1j * self.z * self.sign])


@dataclass(frozen=True)
class ContourRay:
    """Half-line start + t·direction, t ∈ [0, truncation].

    ``orientation`` is +1 when the ray is traversed away from ``start`` and −1 when it
    comes in from infinity.
    """

    start: complex
    direction: complex
    orientation: int
    truncation: float

    @property
    def end(self) -> complex:
        return self.start + self.truncation * self.direction


@dataclass(frozen=True)
class Segment:
    """Finite straight piece between two pivots."""

    start: complex
    end: complex


ContourPath = tuple[ContourRay | Segment, ...]


@dataclass(frozen=True)
class ContourMoments:
    """∫ (i s)^k · exp(phase) ds for k = 0..3 along one contour, with the error estimate."""

    values: tuple[complex, complex, complex, complex]
    error: float
    peak: float


@lru_cache(maxsize=8)
def _reference_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    return (x + 1.0) / 2.0, w / 2.0


def _composite_rule(length: float, panel: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre panels of length ≤ ``panel`` covering [0, length]."""
    n_panels = max(1, math.ceil(length / panel))
    x, w = _reference_rule(order)
    edges = np.linspace(0.0, length, n_panels + 1)
    widths = np.diff(edges)
    nodes = (edges[:-1, None] + widths[:, None] * x[None, :]).ravel()
    weights = (widths[:, None] * w[None, :]).ravel()
    return nodes, weights


def ray_truncation(
    phase: QuarticPhase,
    start: complex,
    direction: complex,
    step: float = 0.25,
    max_length: float = 80.0,
) -> float:
    """Distance along the ray after which the integrand is DECAY_MARGIN below its peak."""
    t = np.arange(0.0, max_length + step, step)
    log_mag = np.real(phase(start + t * direction))
    peak = np.maximum.accumulate(log_mag)
    done = (t >= 1.0) & (log_mag < peak - DECAY_MARGIN)
    idx = int(np.argmax(done))
    if not done[idx]:
        raise QuadratureError(
            f"integrand does not decay along direction {direction}", achieved=math.inf, target=DECAY_MARGIN
        )
    return float(t[idx])


def build_path(
    phase: QuarticPhase,
    valley_in: complex,
    valley_out: complex,
    pivots: tuple[complex, ...],
) -> ContourPath:
    """Polyline from the ``valley_in`` end through ``pivots`` out to the ``valley_out`` end."""
    first, last = pivots[0], pivots[-1]
    pieces: list[ContourRay | Segment] = [
        ContourRay(first, valley_in, -1, ray_truncation(phase, first, valley_in))
    ]
    pieces.extend(Segment(a, b) for a, b in zip(pivots[:-1], pivots[1:]))
    pieces.append(ContourRay(last, valley_out, +1, ray_truncation(phase, last, valley_out)))
    return tuple(pieces)


def _piece_samples(piece: ContourRay | Segment, n: int = 64) -> np.ndarray:
    u = np.linspace(0.0, 1.0, n)
    if isinstance(piece, ContourRay):
        return piece.start + u * piece.truncation * piece.direction
    return piece.start + u * (piece.end - piece.start)


def path_peak(phase: QuarticPhase, path: ContourPath) -> float:
    """Largest log-magnitude of the integrand sampled along ``path``."""
    samples = np.concatenate([_piece_samples(p) for p in path])
    return float(np.max(np.real(phase(samples))))


def select_path(phase: QuarticPhase, valley_in: complex, valley_out: complex) -> ContourPath:
    """Pick the candidate polyline with the lowest integrand peak."""
    saddles = [complex(c) for c in phase.saddles()]
    candidates: list[tuple[complex, ...]] = [(c,) for c in saddles]
    candidates += [(a, b) for a, b in permutations(saddles, 2) if abs(a - b) > 1e-9]

    best = build_path(phase, valley_in, valley_out, (0j,))
    origin_peak = best_peak = path_peak(phase, best)
    for pivots in candidates:
        path = build_path(phase, valley_in, valley_out, pivots)
        peak = path_peak(phase, path)
        if peak < best_peak:
            best, best_peak = path, peak
    if best_peak > origin_peak - ORIGIN_PREFERENCE:
        best = build_path(phase, valley_in, valley_out, (0j,))
    logger.debug(f"contour {valley_in}->{valley_out} at z={phase.z}: peak {best_peak:.2f}")
    return best


def _path_rule(path: ContourPath, panel: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    all_nodes, all_weights = [], []
    for piece in path:
        if isinstance(piece, ContourRay):
            t, w = _composite_rule(piece.truncation, panel, order)
            all_nodes.append(piece.start + t * piece.direction)
            all_weights.append(piece.orientation * piece.direction * w)
        else:
            delta = piece.end - piece.start
            length = abs(delta)
            t, w = _composite_rule(length, panel, order)
            all_nodes.append(piece.start + t * (delta / length))
            all_weights.append((delta / length) * w)
    return np.concatenate(all_nodes), np.concatenate(all_weights)


def _moment_sums(
    phase: QuarticPhase, path: ContourPath, panel: float, order: int, ref: float
) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = _path_rule(path, panel, order)
    base = weights * np.exp(phase(nodes) - ref)
    factors = np.vstack([(1j * nodes) ** k for k in range(N_MOMENTS)])
    terms = factors * base[None, :]
    return terms.sum(axis=1), np.abs(terms).sum(axis=1)


def integrate_path(
    phase: QuarticPhase,
    path: ContourPath,
    tol: float = DEFAULT_TOLERANCE,
    order: int = DEFAULT_ORDER,
    max_bisections: int = MAX_BISECTIONS,
) -> ContourMoments:
    """Moments along ``path`` with panel bisection until successive passes agree.

    Agreement is measured against the L¹ mass of each moment's integrand, the
    natural floor for any cancellation along the path.

    Raises:
        QuadratureError: If ``max_bisections`` passes do not reach ``tol``.
    """
    panel = min(1.0, 2.0 * math.pi / (1.0 + abs(phase.z)))
    ref = path_peak(phase, path)
    coarse, _ = _moment_sums(phase, path, panel, order, ref)
    error = math.inf
    for level in range(1, max_bisections + 1):
        fine, mass = _moment_sums(phase, path, panel / 2**level, order, ref)
        gaps = np.abs(fine - coarse)
        error = float(np.max(gaps / np.maximum(mass, np.finfo(float).tiny)))
        if error <= tol:
            scale = math.exp(ref)
            values = tuple(complex(v) * scale for v in fine)
            return ContourMoments(values=values, error=error, peak=ref)  # type: ignore[arg-type]
        logger.debug(f"refining contour at z={phase.z}: level {level}, error {error:.2e}")
        coarse = fine
    raise QuadratureError(f"panel refinement exhausted at z={phase.z}", achieved=error, target=tol)


@lru_cache(maxsize=65536)
def contour_moments(
    sign: int,
    rho: float,
    z: complex,
    valley_in: complex,
    valley_out: complex,
    tol: float = DEFAULT_TOLERANCE,
    order: int = DEFAULT_ORDER,
) -> ContourMoments:
    """Memoised moments of the valley-to-valley integral; safe under concurrent calls."""
    phase = QuarticPhase(sign=sign, rho=float(rho), z=complex(z))
    path = select_path(phase, valley_in, valley_out)
    return integrate_path(phase, path, tol=tol, order=order)
