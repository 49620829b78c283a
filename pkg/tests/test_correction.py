"""Test the first-order correction J₁ and the matrix R₁."""

import numpy as np
import pytest
from pearcey_gap.checks.parametrix import matching_order_defect, residue_defect
from pearcey_gap.contour import laurent_coefficients
from pearcey_gap.parametrix.correction import (
    dfds_correction,
    dfds_correction_closed_form,
    e_log_derivative_31,
    j1_matrices,
    j1_minus,
    j1_plus,
    j_minus1_closed_form,
    r1_data,
    r1_jump_defect,
)
from pearcey_gap.pearcey_fn import PearceyParams


@pytest.fixture
def params():
    return PearceyParams(0.5)


@pytest.fixture
def data(params):
    return r1_data(4.0, params)


class TestJ1:
    def test_residue_closed_form(self):
        assert residue_defect() < 1e-8

    def test_residue_at_rho_zero(self, rho0):
        """(𝒥₋₁)₁₁ = 2^{1/3}/48 when ρ = 0."""
        assert abs(j_minus1_closed_form(3.0, rho0)[0, 0] - 2 ** (1 / 3) / 48) < 1e-15

    def test_pair(self, params):
        z = -1 + 0.1j
        pair = j1_matrices(z, 4.0, params)
        assert np.array_equal(pair.minus, j1_minus(z, 4.0, params))
        assert np.array_equal(pair.plus, j1_plus(-z, 4.0, params))


class TestR1:
    def test_plus_residue(self, data, params):
        """The residue of J₁^{(1)} at +1 is −Υ𝒥₋₁Υ."""
        coeffs = laurent_coefficients(lambda z: j1_plus(z, 4.0, params), 1.0, orders=(-1,))
        assert np.max(np.abs(coeffs[-1] - data.residue_plus)) < 1e-10

    def test_analytic_inside_disk(self, data):
        """R₁ has no pole at −1 once J₁ is removed."""
        coeffs = laurent_coefficients(data, -1.0, orders=(-1,))
        assert np.max(np.abs(coeffs[-1])) < 1e-10

    def test_jump_on_circle(self, data):
        assert r1_jump_defect(data) < 1e-8

    def test_leading_coefficient(self, data):
        """z·R₁(z) → Res₋ + Res₊ at infinity."""
        z = 1e4
        expected = data.leading * data.s ** (4 / 3)
        assert np.max(np.abs(z * data(z) - expected)) < 1e-3 * np.max(np.abs(expected))


class TestDerivativeCorrection:
    def test_closed_form(self, params):
        assert abs(dfds_correction(4.0, params) - dfds_correction_closed_form(4.0, params)) < 1e-6

    def test_reuses_data(self, data, params):
        assert dfds_correction(4.0, params, data) == dfds_correction(4.0, params)

    def test_e_log_derivative_vanishes(self, params):
        assert abs(e_log_derivative_31(4.0, params)) < 1e-8


class TestMatching:
    def test_leading_order(self):
        """P^{(−1)}N⁻¹ − I decays like s^{−4/3} on the circle."""
        assert matching_order_defect(corrected=False) < 0.3

    def test_corrected_order(self):
        """Removing J₁/s^{4/3} leaves s^{−8/3}."""
        assert matching_order_defect(corrected=True) < 0.3

    def test_order_includes_small_s(self):
        """The fitted order holds with s = 4 in the sample set."""
        assert matching_order_defect(s_values=(4.0, 8.0), corrected=False) < 0.3
