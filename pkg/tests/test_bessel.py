"""Test the modified Bessel functions and the Bessel model solution."""

import cmath
import math

import numpy as np
import pytest
from pearcey_gap.checks.parametrix import bessel_det_defect, bessel_negative_axis_defect
from pearcey_gap.contour import boundary_value
from pearcey_gap.errors import BranchError, DomainError
from pearcey_gap.parametrix.bessel import (
    b_log_derivative_31,
    bessel_sector,
    embed,
    infinity_defect,
    modified_bessel,
    phi_bessel,
    phi_bessel_derivative,
    phi_bessel_scaled,
)


class TestModifiedBessel:
    def test_i0_at_one(self):
        assert abs(modified_bessel(0.0, 1.0).i_val - 1.2660658777520082) < 1e-14

    def test_half_order(self):
        """I_{1/2}(ζ) = √(2/(πζ))·sinh ζ."""
        value = modified_bessel(0.5, 2.0).i_val
        assert abs(value - math.sqrt(1 / math.pi) * math.sinh(2.0)) < 1e-13

    @pytest.mark.parametrize("alpha", [0.0, 0.3, -0.5, 1.0])
    def test_wronskian(self, alpha):
        """I·K′ − I′·K = −1/ζ."""
        zeta = 3 + 4j
        assert abs(modified_bessel(alpha, zeta).wronskian() + 1 / zeta) < 1e-13

    def test_negative_axis(self):
        with pytest.raises(BranchError):
            modified_bessel(0.0, -2.0)
        with pytest.raises(BranchError):
            modified_bessel(0.0, 0.0)

    def test_order_range(self):
        with pytest.raises(DomainError):
            modified_bessel(1.5, 1.0)


class TestSectors:
    def test_indices(self):
        assert bessel_sector(1.0) == 1
        assert bessel_sector(cmath.rect(1.0, 2.5)) == 2
        assert bessel_sector(cmath.rect(1.0, -2.5)) == 3

    def test_rays_rejected(self):
        for z in (0, -1.0, cmath.rect(2.0, 2 * math.pi / 3)):
            with pytest.raises(BranchError):
                bessel_sector(z)


class TestPhi:
    def test_unimodular(self):
        assert bessel_det_defect() < 1e-10

    def test_negative_axis_jump(self):
        """Φ₊ = Φ₋·[[0, 1], [−1, 0]] at −4."""
        assert bessel_negative_axis_defect() < 1e-9

    def test_ray_jump(self):
        """Crossing the upper ray counter-clockwise multiplies by [[1, 0], [−e^{απi}, 1]]."""
        alpha, angle = 0.4, 2.5
        z = cmath.rect(4.0, angle)
        normal = 1j * cmath.exp(1j * angle)
        above = boundary_value(lambda t: phi_bessel(alpha, t, angle), z, normal)
        below = boundary_value(lambda t: phi_bessel(alpha, t, angle), z, -normal)
        jump = np.array([[1, 0], [-cmath.exp(1j * math.pi * alpha), 1]])
        assert np.max(np.abs(above - below @ jump)) < 1e-9 * np.max(np.abs(above))

    @pytest.mark.parametrize("z", [3 + 1j, -3 + 1j, -3 - 1j])
    def test_scaled_form(self, z):
        """phi_bessel_scaled = Φ·diag(e^{−√z}, e^{√z})."""
        u = cmath.sqrt(z)
        direct = phi_bessel(0.2, z) @ np.diag([cmath.exp(-u), cmath.exp(u)])
        assert np.max(np.abs(phi_bessel_scaled(0.2, z) - direct)) < 1e-12 * np.max(np.abs(direct))

    def test_derivative(self):
        z, h = 2 + 1j, 1e-5
        numeric = (phi_bessel(0.0, z + h) - phi_bessel(0.0, z - h)) / (2 * h)
        assert np.max(np.abs(phi_bessel_derivative(0.0, z) - numeric)) < 1e-8

    def test_large_z(self):
        """Two-term expansion at infinity, improving with |z|."""
        near = infinity_defect(0.0, 400.0)
        assert near < 1e-3
        assert infinity_defect(0.0, 1600.0) < near

    def test_log_derivative_at_origin(self):
        """(ℬ⁻¹ℬ′)₃₁ → πi/2 for α = 0."""
        assert abs(b_log_derivative_31(0.0, 1e-8 + 1e-8j) - 0.5j * math.pi) < 1e-6

    def test_embed(self):
        phi = np.array([[1, 2], [3, 4]], dtype=complex)
        out = embed(phi)
        assert out[1, 1] == 1
        assert out[0, 2] == 2 and out[2, 0] == 3 and out[2, 2] == 4
        assert out[0, 1] == 0 and out[1, 2] == 0
