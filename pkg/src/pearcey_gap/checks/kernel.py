"""Checks on the Pearcey kernel representations."""

import itertools

import numpy as np

from ..kernel import kernel_bh, kernel_diag, kernel_rh
from ..pearcey_fn import PearceyParams
from .base import BaseCheckSet, CheckInfo

GRID = tuple(float(v) for v in np.linspace(-3.0, 3.0, 5))


def representation_gap(rhos=(-1.0, 0.0, 1.0), grid=GRID) -> float:
    """max |K_bh − K_rh| / (1 + |K|) over off-diagonal grid pairs."""
    worst = 0.0
    for rho in rhos:
        params = PearceyParams(rho)
        for x, y in itertools.product(grid, grid):
            if x == y:
                continue
            bh = kernel_bh(x, y, params)
            worst = max(worst, abs(bh - kernel_rh(x, y, params)) / (1 + abs(bh)))
    return worst


def diagonal_continuity(x: float = 0.6, rho: float = 0.5) -> float:
    params = PearceyParams(rho)
    return abs(kernel_bh(x, x + 1e-3, params) - kernel_bh(x, x + 1e-3 * (1 - 1e-9), params, threshold=2e-3))


class KernelChecks(BaseCheckSet):
    """Agreement of the kernel formulas and the diagonal branch."""

    suite = "kernel"

    def get_checks(self) -> dict[str, CheckInfo]:
        checks = [
            self.check("representations", "Pearcey-integral and Psi forms of K agree", 1e-8, representation_gap),
            self.check("taylor_branch", "near-diagonal Taylor branch meets the quotient", 1e-8, diagonal_continuity),
            self.check(
                "diagonal_even",
                "K(x,x) = K(-x,-x)",
                1e-10,
                lambda: abs(kernel_diag(0.7, PearceyParams(0.3)) - kernel_diag(-0.7, PearceyParams(0.3))),
            ),
        ]
        return {c.name: c for c in checks}
