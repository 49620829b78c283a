"""Test the conformal maps, the prefactor E and the local parametrices."""

import numpy as np
import pytest
from pearcey_gap.checks.parametrix import e_analyticity_defect, e_closed_form_defect
from pearcey_gap.contour import boundary_value
from pearcey_gap.errors import BranchError, DomainError
from pearcey_gap.parametrix.global_n import global_constants
from pearcey_gap.parametrix.local import (
    SIGMA3_JUMP,
    a_log_derivative,
    conformal_f,
    conformal_f_tilde,
    e_prime_at_minus1,
    e_prime_col1_closed_form,
    f_taylor,
    lambda_123_at_minus1,
    lambda_123_closed_form,
    local_P,
    prefactor_E,
    script_factors,
)
from pearcey_gap.pearcey_fn import PearceyParams
from pearcey_gap.surface import surface_constants


@pytest.fixture
def params():
    return PearceyParams(0.5)


class TestConformalMap:
    def test_vanishes_at_branch_point(self, params):
        assert abs(conformal_f(-1.0, 4.0, params)) < 1e-12

    def test_taylor_coefficients(self, params):
        """f(z) = C₁²(z+1) + 2C₁C₃(z+1)² + …"""
        k = surface_constants(4.0, params)
        first, second = f_taylor(4.0, params)
        assert abs(first - k.c1**2) < 1e-10
        assert abs(second - 2 * k.c1 * k.c3) < 1e-8

    def test_mirror(self, params):
        z = 0.9 + 0.1j
        assert abs(conformal_f_tilde(z, 4.0, params) - conformal_f(-z, 4.0, params)) < 1e-12

    def test_outside_disk(self, params):
        with pytest.raises(DomainError):
            conformal_f(-0.5, 4.0, params)
        with pytest.raises(DomainError):
            conformal_f_tilde(0.5, 4.0, params)


class TestPrefactor:
    def test_analytic_across_cut(self):
        assert e_analyticity_defect() < 1e-8

    def test_value_at_minus1(self):
        assert e_closed_form_defect() < 1e-7

    def test_derivative_first_column(self, params):
        numeric = e_prime_at_minus1(4.0, params)[:, 0]
        closed = e_prime_col1_closed_form(4.0, params)
        assert np.max(np.abs(numeric - closed)) < 1e-6 * max(1.0, np.max(np.abs(closed)))

    def test_centre_rejected(self, params):
        with pytest.raises(DomainError):
            prefactor_E(-1.0, 4.0, params)


class TestLocalParametrix:
    def test_jump_left_of_branch_point(self, rho0):
        """P₊ = P₋·J on (−1 − δ, −1)."""
        upper = boundary_value(lambda z: local_P(-1, z, 6.0, rho0), -1.1, 1j)
        lower = boundary_value(lambda z: local_P(-1, z, 6.0, rho0), -1.1, -1j)
        assert np.max(np.abs(upper - lower @ SIGMA3_JUMP)) < 1e-8 * np.max(np.abs(upper))

    def test_mirror(self, params):
        """P^{(1)}(z) = Υ·P^{(−1)}(−z)·Λ."""
        k = global_constants()
        z = 1.1 + 0.1j
        expected = k.ups @ local_P(-1, -z, 4.0, params) @ k.lam
        assert np.max(np.abs(local_P(1, z, 4.0, params) - expected)) < 1e-14 * np.max(np.abs(expected))

    def test_domain(self, params):
        with pytest.raises(DomainError):
            local_P(0, -1.1, 4.0, params)
        with pytest.raises(DomainError):
            local_P(-1, -0.5, 4.0, params)
        with pytest.raises(DomainError):
            local_P(-1, -1.0, 4.0, params)


class TestScriptFactors:
    def test_branch_guard(self, params):
        with pytest.raises(BranchError):
            script_factors(-1.2 + 1e-3j, 4.0, params)

    def test_log_derivative_pattern(self, params):
        out = a_log_derivative(-1 + 0.2j, 4.0, params)
        assert out[1, 0] == 0 and out[2, 0] == 0
        assert out[0, 1] == 0 and out[0, 2] == 0 and out[1, 2] == 0
        assert abs(out[2, 1] + (out[1, 1] - out[0, 0])) < 1e-12 * abs(out[2, 1])

    def test_log_derivative_numeric(self, params):
        """𝒜⁻¹𝒜′ against a central difference of 𝒜."""
        z, h, s = -1 + 0.2j, 1e-5, 4.0
        a = script_factors(z, s, params).a_matrix
        up = script_factors(z + h, s, params).a_matrix
        down = script_factors(z - h, s, params).a_matrix
        numeric = np.linalg.solve(a, (up - down) / (2 * h))
        exact = a_log_derivative(z, s, params)
        assert np.max(np.abs(numeric - exact)) < 1e-5 * np.max(np.abs(exact))

    def test_phase_combination(self, params):
        """λ₁ + λ₃ − 2λ₂ at −1."""
        assert abs(lambda_123_at_minus1(3.0, params) - lambda_123_closed_form(3.0, params)) < 1e-10
