"""Test the Nyström determinant, resolvent and differential identities."""

import numpy as np
import pytest
from pearcey_gap.asymptotics import dFdrho_expansion, dFds_expansion
from pearcey_gap.checks.fredholm import integrable_form_gap, moment_identity, nystrom_convergence
from pearcey_gap.errors import DomainError
from pearcey_gap.fredholm import (
    build_grid,
    convergence_table,
    dF_drho,
    dF_ds,
    finite_difference,
    fredholm_logdet,
    resolvent,
    resolvent_vectors,
    trace_series_logdet,
    y1_x1_moments,
    y_matrix,
)
from pearcey_gap.kernel import kernel_diag, kernel_matrix, vectors_fh
from pearcey_gap.pearcey_fn import PearceyParams


class TestGrid:
    def test_moments(self):
        """The rule integrates 1, x and x² exactly."""
        grid = build_grid(1.7, 20)
        assert abs(grid.weights.sum() - 2 * 1.7) < 1e-14
        assert abs(grid.weights @ grid.nodes) < 1e-13
        assert abs(grid.weights @ grid.nodes**2 - 2 * 1.7**3 / 3) < 1e-12

    def test_symmetric_nodes(self):
        grid = build_grid(2.0, 12)
        assert np.allclose(np.sort(grid.nodes), -np.sort(grid.nodes)[::-1])

    @pytest.mark.parametrize("s,m", [(0.0, 8), (-1.0, 8), (1.0, 7), (1.0, 2)])
    def test_invalid(self, s, m):
        with pytest.raises(DomainError):
            build_grid(s, m)


class TestLogdet:
    def test_empty_interval_limit(self, rho0):
        """det → 1 as s → 0."""
        result = fredholm_logdet(1e-3, rho0, 8)
        assert result.F < 0
        assert abs(result.F) < 1e-2

    def test_exponential_convergence(self, rho0):
        """|F_40 − F_80| at s = 3."""
        assert abs(fredholm_logdet(3.0, rho0, 40).F - fredholm_logdet(3.0, rho0, 80).F) < 1e-9
        assert fredholm_logdet(3.0, rho0, 40).est_error < 1e-9

    def test_decreasing_in_s(self, rho0):
        values = [fredholm_logdet(s, rho0, 40).F for s in (1.0, 2.0, 3.0)]
        assert 0 > values[0] > values[1] > values[2]

    def test_trace_series(self, rho0):
        """The LU log-det agrees with −Σ tr(Aⁿ)/n at small s."""
        assert abs(fredholm_logdet(0.1, rho0, 20).F - trace_series_logdet(0.1, rho0, n_terms=10)) < 1e-10

    def test_trace_series_monotone(self, rho0):
        """Partial sums close in on the LU value as terms are added."""
        exact = fredholm_logdet(0.2, rho0, 20).F
        errors = [abs(trace_series_logdet(0.2, rho0, n_terms=n) - exact) for n in range(1, 7)]
        assert all(b <= a for a, b in zip(errors, errors[1:]))
        assert errors[-1] < 1e-6

    def test_trace_series_first_term(self, rho0):
        """One term is minus the discrete trace."""
        grid = build_grid(0.1, 20)
        trace = sum(w * kernel_diag(float(x), rho0) for x, w in zip(grid.nodes, grid.weights))
        assert abs(trace_series_logdet(0.1, rho0, n_terms=1) + trace) < 1e-13

    def test_trace_series_rejects_zero_terms(self, rho0):
        with pytest.raises(DomainError):
            trace_series_logdet(0.1, rho0, n_terms=0)

    def test_second_order_small_gap(self, rho0):
        """F + 2s·K(0,0) is O(s²)."""
        k00 = kernel_diag(0.0, rho0)
        small = fredholm_logdet(0.02, rho0, 8).F + 0.04 * k00
        large = fredholm_logdet(0.04, rho0, 8).F + 0.08 * k00
        assert abs(large / small - 4) < 0.3

    def test_convergence_table(self, rho0):
        rows = convergence_table(2.0, rho0, [40, 10, 20])
        assert [r[0] for r in rows] == [10, 20, 40]
        assert rows[-1][2] == 0.0
        assert rows[1][2] < rows[0][2]

    def test_derivatives_filled(self, rho0):
        result = fredholm_logdet(1.0, rho0, 20, derivatives=True)
        assert result.dF_ds is not None and result.dF_drho is not None
        assert fredholm_logdet(1.0, rho0, 20).dF_ds is None


class TestResolvent:
    def test_defining_identity(self, rho1):
        """R = K + K·W·R on the grid."""
        r = resolvent(1.5, rho1, 20)
        grid = r.op.grid
        k = kernel_matrix(grid.nodes, grid.nodes, rho1)
        at_nodes = r.at_nodes()
        assert np.max(np.abs(at_nodes - k - (k * grid.weights[None, :]) @ at_nodes)) < 1e-10

    def test_interpolant_matches_nodes(self, rho0):
        r = resolvent(1.0, rho0, 16)
        x = r.op.grid.nodes
        assert abs(r(float(x[2]), float(x[5])) - r.at_nodes()[2, 5]) < 1e-10

    def test_integrable_form(self):
        """F⃗(u)ᵗH⃗(v)/(u − v) equals the Nyström resolvent."""
        assert integrable_form_gap() < 1e-8

    def test_y_matrix(self, rho0):
        """Y(z)·f⃗(z) = F⃗(z) outside the interval."""
        vectors = resolvent_vectors(1.5, rho0, 30)
        z = 2.5
        lhs = y_matrix(vectors, z) @ vectors_fh(z, rho0).f
        rhs = vectors.F_at(z)
        assert np.max(np.abs(lhs - rhs)) < 1e-7 * np.max(np.abs(rhs))


class TestDerivatives:
    def test_ds_finite_difference(self, rho0):
        numeric = finite_difference(lambda t: fredholm_logdet(t, rho0, 40).F, 2.0, 1e-3)
        assert abs(dF_ds(2.0, rho0, 40) - numeric) < 1e-6

    def test_drho_finite_difference(self):
        numeric = finite_difference(lambda r: fredholm_logdet(2.0, PearceyParams(r), 40).F, 0.0, 1e-3)
        assert abs(dF_drho(2.0, PearceyParams(0.0), 40) - numeric) < 1e-6

    def test_ds_small_gap(self, rho0):
        """∂F/∂s → −2K(0,0) as s → 0."""
        assert abs(dF_ds(1e-3, rho0, 8) + 2 * kernel_diag(0.0, rho0)) < 1e-3

    def test_drho_small_gap(self, rho0):
        assert abs(dF_drho(0.01, rho0, 8)) < 1e-3

    def test_y1_identity(self, rho1):
        """−½[(Y₁)₁₂ + (Y₁)₂₃] = ∂F/∂ρ."""
        y1 = y1_x1_moments(2.0, rho1, 60).y1
        assert abs((-0.5 * (y1[0, 1] + y1[1, 2])).real - dF_drho(2.0, rho1, 60)) < 1e-8

    def test_x1_identity(self):
        """−½[(X₁)₁₂ + (X₁)₂₃] + ρ³/54 = ∂F/∂ρ."""
        assert moment_identity(s=2.0, rho=1.0, m=60) < 1e-8

    def test_x1_equals_y1_shift_at_rho_zero(self, rho0):
        moments = y1_x1_moments(1.5, rho0, 40)
        x1, y1 = moments.x1, moments.y1
        assert abs((x1[0, 1] + x1[1, 2]) - (y1[0, 1] + y1[1, 2])) < 1e-10


@pytest.mark.slow
class TestLargeGap:
    def test_ds_against_expansion(self, rho0):
        numeric = dF_ds(6.0, rho0, 100)
        assert abs(numeric - dFds_expansion(6.0, 0.0)) < 0.02 * abs(numeric)

    def test_drho_against_expansion(self, rho1):
        numeric = dF_drho(6.0, rho1, 100)
        assert abs(numeric - dFdrho_expansion(6.0, 1.0)) < 0.05 * abs(numeric)

    def test_convergence_at_largest_window_edge(self):
        """|F_100 − F_200| at s = 8."""
        assert nystrom_convergence(s=8.0, rho=0.0, m=100) < 1e-8
