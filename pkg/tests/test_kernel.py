"""Test the Pearcey kernel representations."""

import math

import numpy as np
import pytest
from pearcey_gap.checks.kernel import representation_gap
from pearcey_gap.errors import DomainError
from pearcey_gap.kernel import kernel_bh, kernel_diag, kernel_matrix, kernel_rh, numerator, vectors_fh
from pearcey_gap.pearcey_fn import PearceyParams, pearcey_p


class TestRepresentations:
    """The p/q form against the Ψ̃ form."""

    def test_single_point(self, rho0):
        """kernel_bh(1, −1) = kernel_rh(1, −1) at ρ = 0."""
        assert abs(kernel_bh(1.0, -1.0, rho0) - kernel_rh(1.0, -1.0, rho0)) < 1e-8

    @pytest.mark.parametrize("rho", [-1.0, 0.0, 1.0])
    def test_grid(self, rho):
        """Agreement on a grid in [−3, 3]²."""
        assert representation_gap(rhos=(rho,)) < 1e-8

    def test_rh_is_real(self):
        """The Ψ̃ form has no imaginary part for real arguments."""
        value = kernel_rh(0.5, -0.3, PearceyParams(2.0), return_complex=True)
        assert abs(value.imag) < 1e-9 * max(1.0, abs(value))

    def test_rh_rejects_diagonal(self, rho0):
        with pytest.raises(DomainError):
            kernel_rh(0.4, 0.4, rho0)

    def test_integrable_form(self, rho1):
        """fᵗ(x)h(y)/(x − y) reproduces kernel_rh."""
        x, y = 0.7, -1.2
        value = complex(vectors_fh(x, rho1).f @ vectors_fh(y, rho1).h) / (x - y)
        assert abs(value - kernel_rh(x, y, rho1, return_complex=True)) < 1e-12 * max(1.0, abs(value))

    def test_f_is_p0_triple(self, rho1):
        f = vectors_fh(0.3, rho1).f
        assert np.allclose(f, pearcey_p(0, 0.3, rho1).as_array(), rtol=0, atol=1e-14)


class TestDiagonal:
    def test_numerator_vanishes(self, rho1):
        """The difference quotient has a removable singularity at y = x."""
        assert abs(numerator(0.9, 0.9, rho1)) < 1e-10

    @pytest.mark.parametrize("x", [-1.5, 0.0, 1.0])
    def test_taylor_branch(self, x, rho0):
        """kernel_bh just off the diagonal matches kernel_diag."""
        assert abs(kernel_bh(x, x + 1e-7, rho0) - kernel_diag(x, rho0)) < 1e-6
        assert abs(kernel_bh(x, x - 1e-7, rho0) - kernel_diag(x, rho0)) < 1e-6

    def test_density_positive(self, rho0):
        """K(x, x) > 0 on [−2, 2]."""
        assert all(kernel_diag(x, rho0) > 0 for x in np.linspace(-2, 2, 9))

    def test_density_even(self, rho1):
        assert abs(kernel_diag(1.3, rho1) - kernel_diag(-1.3, rho1)) < 1e-10

    def test_density_at_origin(self, rho0):
        """At x = 0 only −p″q′ survives, and the closed form is positive."""
        value = kernel_diag(0.0, rho0)
        assert value > 0
        assert math.isfinite(value)


class TestMatrix:
    def test_matches_pointwise(self, rho0):
        """kernel_matrix agrees with kernel_bh entry by entry, diagonal included."""
        xs = np.array([-1.0, 0.0, 0.5])
        k = kernel_matrix(xs, xs, rho0)
        for i, x in enumerate(xs):
            for j, y in enumerate(xs):
                expected = kernel_diag(x, rho0) if i == j else kernel_bh(x, y, rho0)
                assert abs(k[i, j] - expected) < 1e-10
