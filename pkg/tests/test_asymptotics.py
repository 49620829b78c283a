"""Test the large-gap expansion and the constant fit."""

import math

import numpy as np
import pytest
from pearcey_gap.asymptotics import (
    F_expansion,
    dFdrho_expansion,
    dFds_expansion,
    fit_constant,
    forrester_exponent,
    synthetic_samples,
)
from pearcey_gap.checks.asymptotics import (
    constant_spread,
    exponent_outside_window,
    real_fit,
    real_samples,
    refined_agreement,
    slope_against_expansion,
)
from pearcey_gap.errors import DomainError, FitError

S_WINDOW = list(np.linspace(4.0, 8.0, 9))


class TestExpansion:
    def test_rho_zero(self):
        """At s = 2 only the leading and log terms survive."""
        assert F_expansion(2.0, 0.0).total == pytest.approx(-9 / 8 - 2 / 9 * math.log(2), abs=1e-14)

    def test_terms_at_unit_s(self):
        terms = F_expansion(1.0, 1.0, c=0.25)
        assert terms.leading == pytest.approx(-9 / 2 ** (17 / 3))
        assert terms.quad == pytest.approx(0.25)
        assert terms.frac == pytest.approx(-1 / 2 ** (10 / 3))
        assert terms.log == 0.0
        assert terms.rho4 == pytest.approx(1 / 216)
        assert terms.total - terms.without_constant == pytest.approx(0.25)

    def test_ds_expansion(self):
        assert dFds_expansion(2.0, 0.0) == pytest.approx(-1.5 - 1 / 9, abs=1e-14)

    def test_ds_matches_derivative_of_F(self):
        s, rho, h = 5.0, 0.7, 1e-5
        numeric = (F_expansion(s + h, rho).total - F_expansion(s - h, rho).total) / (2 * h)
        assert dFds_expansion(s, rho) == pytest.approx(numeric, abs=1e-6)

    def test_drho_at_rho_zero(self):
        assert dFdrho_expansion(3.0, 0.0) == pytest.approx(9 / 4)

    def test_refined_form(self):
        """The unexpanded ∂F/∂s differs from the polynomial one at O(s^{−5/3})."""
        assert refined_agreement() < 0.1
        assert abs(dFds_expansion(40.0, 0.0, refined=True) - dFds_expansion(40.0, 0.0)) < 1e-2

    def test_rejects_non_positive_s(self):
        with pytest.raises(DomainError):
            F_expansion(0.0, 0.0)


class TestFit:
    def test_recovers_injected_constant(self):
        samples = synthetic_samples(S_WINDOW, rho=0.0, c=0.7, a=0.3)
        report = fit_constant(samples, rho=0.0)
        assert abs(report.c_hat - 0.7) < 1e-6
        assert report.coefficients[1] == pytest.approx(0.3, abs=1e-6)

    def test_recovers_with_rho(self):
        samples = synthetic_samples(S_WINDOW, rho=1.5, c=-0.1)
        assert abs(fit_constant(samples, rho=1.5).c_hat + 0.1) < 1e-6

    def test_extra_terms(self):
        samples = synthetic_samples(S_WINDOW, rho=0.0, c=0.2)
        report = fit_constant(samples, rho=0.0, extra_terms=1)
        assert abs(report.c_hat - 0.2) < 1e-5
        assert len(report.coefficients) == 3

    def test_report_samples(self):
        samples = synthetic_samples(S_WINDOW, rho=0.0, c=0.0, a=0.0)
        report = fit_constant(samples, rho=0.0)
        assert len(report.samples) == len(S_WINDOW)
        assert all(abs(g) < 1e-12 for _, _, g in report.samples)
        assert set(report.to_dict()) >= {"c_hat", "c_stderr", "residual_exponent", "samples"}

    def test_too_few_samples(self):
        with pytest.raises(FitError):
            fit_constant(synthetic_samples([4.0, 5.0, 6.0, 7.0], 0.0, 0.0), rho=0.0)

    def test_underdetermined(self):
        with pytest.raises(FitError):
            fit_constant(synthetic_samples([4.0, 5.0, 6.0, 7.0, 8.0], 0.0, 0.0), rho=0.0, extra_terms=4)

    def test_rejects_samples_outside_window(self):
        samples = synthetic_samples([3.0, 4.0, 5.0, 6.0, 7.0, 8.0], rho=0.0, c=0.4)
        with pytest.raises(FitError, match="outside"):
            fit_constant(samples, rho=0.0)

    def test_allow_window(self):
        samples = synthetic_samples([3.0, 4.0, 5.0, 6.0, 7.0, 8.0], rho=0.0, c=0.4)
        assert abs(fit_constant(samples, rho=0.0, allow_window=True).c_hat - 0.4) < 1e-6

    def test_negative_extra_terms(self):
        with pytest.raises(FitError):
            fit_constant(synthetic_samples(S_WINDOW, 0.0, 0.0), rho=0.0, extra_terms=-1)


class TestExponent:
    def test_pure_power(self):
        samples = [(s, -(s ** (8 / 3))) for s in S_WINDOW]
        assert forrester_exponent(samples) == pytest.approx(8 / 3, abs=1e-10)

    def test_needs_negative_values(self):
        with pytest.raises(FitError):
            forrester_exponent([(s, 1.0) for s in S_WINDOW])


@pytest.mark.slow
class TestRealData:
    """Nyström data on s in {4, ..., 8} at m = 100.

    Observed: slope 2.574 (ρ = 0), 2.877 (ρ = 1); c_hat −0.3053 ± 0.0006 (ρ = 0),
    −0.3138 ± 0.0018 (ρ = 1); residual exponents −0.64 and −0.66.
    """

    @pytest.mark.parametrize("rho", [0.0, 1.0])
    def test_residual_exponent(self, rho):
        assert -1.0 <= real_fit(rho).residual_exponent <= -0.4
        assert exponent_outside_window((rho,)) == 0.0

    @pytest.mark.parametrize("rho", [0.0, 1.0])
    def test_slope_follows_expansion(self, rho):
        """The window is pre-asymptotic: the slope sits below 8/3 exactly as the expansion does."""
        assert slope_against_expansion(rho) < 0.05

    def test_slope_at_rho_zero(self):
        assert forrester_exponent(list(real_samples(0.0))) == pytest.approx(2.574, abs=0.02)

    def test_constant_across_rho(self):
        assert constant_spread((0.0, 1.0)) < 0.02
        assert real_fit(0.0).c_hat == pytest.approx(-0.3053, abs=0.005)
