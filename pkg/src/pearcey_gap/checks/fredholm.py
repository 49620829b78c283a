"""Checks on the Nyström determinant, its derivatives and the resolvent identities."""

import numpy as np

from ..fredholm import (
    dF_drho,
    dF_ds,
    finite_difference,
    fredholm_logdet,
    integrable_resolvent,
    resolvent,
    resolvent_vectors,
    trace_series_logdet,
    y1_x1_moments,
)
from ..pearcey_fn import PearceyParams
from .base import BaseCheckSet, CheckInfo


def nystrom_convergence(s: float = 3.0, rho: float = 0.0, m: int = 40) -> float:
    params = PearceyParams(rho)
    return abs(fredholm_logdet(s, params, m).F - fredholm_logdet(s, params, 2 * m).F)


def small_gap_oracle(s: float = 0.1) -> float:
    params = PearceyParams()
    return abs(fredholm_logdet(s, params, 20).F - trace_series_logdet(s, params, n_terms=6))


def ds_closure(s: float = 1.0, rho: float = 0.0, m: int = 40, h: float = 1e-3) -> float:
    params = PearceyParams(rho)
    numeric = finite_difference(lambda t: fredholm_logdet(t, params, m).F, s, h)
    return abs(dF_ds(s, params, m) - numeric)


def drho_closure(s: float = 1.0, rho: float = 0.5, m: int = 40, h: float = 1e-3) -> float:
    numeric = finite_difference(lambda r: fredholm_logdet(s, PearceyParams(r), m).F, rho, h)
    return abs(dF_drho(s, PearceyParams(rho), m) - numeric)


def integrable_form_gap(s: float = 1.5, rho: float = 0.0, m: int = 40, u: float = 0.3, v: float = -0.5) -> float:
    params = PearceyParams(rho)
    vectors = resolvent_vectors(s, params, m)
    return abs(integrable_resolvent(vectors, u, v).real - resolvent(s, params, m)(u, v))


def moment_identity(s: float = 2.0, rho: float = 1.0, m: int = 60) -> float:
    """|−½[(X₁)₁₂ + (X₁)₂₃] + ρ³/54 − ∂F/∂ρ|."""
    params = PearceyParams(rho)
    x1 = y1_x1_moments(s, params, m).x1
    value = -0.5 * (x1[0, 1] + x1[1, 2]) + rho**3 / 54
    return float(np.abs(value - dF_drho(s, params, m)))


class FredholmChecks(BaseCheckSet):
    """Nyström convergence, small-s oracle and differential identities."""

    suite = "fredholm"

    def get_checks(self) -> dict[str, CheckInfo]:
        checks = [
            self.check("convergence", "|F_40 - F_80| at s=3", 1e-9, nystrom_convergence),
            self.check(
                "convergence_large",
                "|F_100 - F_200| at s=8",
                1e-8,
                lambda: nystrom_convergence(s=8.0, rho=0.0, m=100),
            ),
            self.check("trace_series", "LU log-det against the trace series at s=0.1", 1e-10, small_gap_oracle),
            self.check("dF_ds", "resolvent form of dF/ds against a central difference", 1e-6, ds_closure),
            self.check("dF_drho", "integral form of dF/drho against a central difference", 1e-6, drho_closure),
            self.check("integrable_resolvent", "F(u)H(v)/(u-v) against the Nystrom resolvent", 1e-8, integrable_form_gap),
            self.check("x1_identity", "dF/drho from the X1 moment", 1e-8, moment_identity),
        ]
        return {c.name: c for c in checks}
