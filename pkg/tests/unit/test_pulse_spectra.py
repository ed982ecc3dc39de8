"""
Unit tests for input spectra and drive terms

Run with: pytest tests/unit/test_pulse_spectra.py -v
"""

import numpy as np
import pytest

from src.core.errors import QuadratureError, ValidationError
from src.core.model import PulseShape, PulseSpec
from src.observables.features import curve_fwhm
from src.pulse.spectra import (
    drive_table,
    drive_term,
    gaussian_spectrum,
    input_spectrum,
    inversion_spectrum,
    spectral_amplitude,
)


class TestGaussianSpectrum:
    def test_normalized_on_default_grid(self, one_atom):
        """Integral of |phi|^2 over the default grid is one"""
        amplitude = spectral_amplitude(one_atom)

        assert amplitude.norm(one_atom.grid.samples) == pytest.approx(1.0, abs=1e-10)

    def test_real_positive_peak_at_center(self):
        """phi is real, positive and peaked at delta_0"""
        pulse = PulseSpec(width=0.02, center_detuning=0.5)
        amplitude = gaussian_spectrum(pulse)
        delta_k = np.linspace(-0.1, 0.1, 2001)
        values = amplitude(delta_k)

        assert np.all(values.real > 0)
        assert np.all(values.imag == 0)
        assert delta_k[np.argmax(values.real)] == pytest.approx(0.01, abs=1e-4)

    def test_spectral_fwhm(self):
        """|phi|^2 has FWHM sqrt(2 ln 2) Delta"""
        delta_k = np.linspace(-0.1, 0.1, 20001)
        density = np.abs(gaussian_spectrum(PulseSpec(width=0.02))(delta_k)) ** 2

        assert curve_fwhm(delta_k, density) == pytest.approx(np.sqrt(2.0 * np.log(2.0)) * 0.02, rel=1e-4)

    def test_wrong_shape(self):
        """Inversion pulses are rejected"""
        with pytest.raises(ValidationError, match="gaussian"):
            gaussian_spectrum(PulseSpec(shape=PulseShape.INVERSION))


class TestInversionSpectrum:
    def test_normalized(self):
        """Lorentzian amplitude is square-normalized"""
        pulse = PulseSpec(shape=PulseShape.INVERSION, width=0.02)
        amplitude = inversion_spectrum(pulse, gamma=0.02)
        kappa = 0.01
        delta_k = np.linspace(-2000 * kappa, 2000 * kappa, 400001)

        # (2/pi) atan(2000) of the Lorentzian lies inside
        assert amplitude.norm(delta_k) == pytest.approx(1.0, abs=1e-3)
        assert amplitude.bandwidth == pytest.approx(kappa)

    def test_needs_coupling(self):
        """Zero coupling has no inversion pulse"""
        with pytest.raises(ValidationError, match="positive coupling"):
            inversion_spectrum(PulseSpec(shape=PulseShape.INVERSION), gamma=0.0)

    def test_wrong_shape(self):
        """Gaussian pulses are rejected"""
        with pytest.raises(ValidationError, match="inversion"):
            inversion_spectrum(PulseSpec(), gamma=0.02)


class TestInputSpectrum:
    def test_translation_phase(self, one_atom):
        """Translation to x_0 only adds a phase"""
        delta_k = one_atom.grid.samples
        phi = spectral_amplitude(one_atom)(delta_k)
        translated = input_spectrum(one_atom)

        np.testing.assert_allclose(np.abs(translated), phi, rtol=1e-12)
        expected = np.exp(-1j * (one_atom.k_a + delta_k) * one_atom.pulse_origin)
        np.testing.assert_allclose(translated / phi, expected, atol=1e-9)


class TestDriveTerm:
    """b_j(t) closed form against k-space quadrature"""

    def test_closed_form_matches_quadrature(self, two_atoms):
        """Closed form and trapezoid quadrature agree to 1e-8"""
        times = np.linspace(0.0, 1000.0, 401)
        for j in range(2):
            closed = drive_term(two_atoms, j, times, method="closed")
            numeric = drive_term(two_atoms, j, times, method="quadrature")

            assert np.max(np.abs(closed - numeric)) < 1e-8 * np.max(np.abs(closed))

    def test_gaussian_peak_at_arrival(self, one_atom):
        """|b_1| peaks when the pulse center reaches the atom"""
        peak = drive_term(one_atom, 0, one_atom.arrival_time)
        expected = (8.0 * np.pi) ** -0.25 * np.sqrt(one_atom.gamma * one_atom.delta)

        assert abs(peak) == pytest.approx(expected, rel=1e-12)

    def test_gaussian_negligible_at_start(self, one_atom):
        """The pulse starts well clear of the atom"""
        assert abs(drive_term(one_atom, 0, 0.0)) < 1e-10

    def test_gaussian_temporal_width(self, one_atom):
        """|b_1(t)| is Gaussian; |b_1|^2 has FWHM 2 sqrt(2 ln 2) / (Delta v_g)"""
        delta = one_atom.delta
        times = one_atom.arrival_time + np.linspace(-6.0, 6.0, 2401) / delta
        magnitude = np.abs(drive_term(one_atom, 0, times))

        width = curve_fwhm(times, magnitude**2)
        assert width == pytest.approx(2.0 * np.sqrt(2.0 * np.log(2.0)) / delta, rel=1e-4)
        curvature, _, _ = np.polyfit(times - one_atom.arrival_time, np.log(magnitude), 2)
        assert curvature == pytest.approx(-(delta**2) / 4.0, rel=1e-6)

    def test_magnitude_translation_invariant(self, make_scenario):
        """Shifting atoms and pulse together keeps |b_j(t)|"""
        base = make_scenario(n_atoms=2, spacing=0.25)
        shifted = make_scenario(n_atoms=2, spacing=0.25, r_1=7.3)
        times = np.linspace(300.0, 700.0, 81)

        np.testing.assert_allclose(np.abs(drive_table(shifted, times)), np.abs(drive_table(base, times)), rtol=1e-10)

    def test_inversion_profile(self, make_scenario):
        """Rising exponential cut off at arrival"""
        scenario = make_scenario(shape=PulseShape.INVERSION)
        gamma = scenario.gamma
        kappa = gamma / 2.0
        arrival = scenario.arrival_time

        before = drive_term(scenario, 0, arrival - 40.0)
        at = drive_term(scenario, 0, arrival)
        after = drive_term(scenario, 0, arrival + 1.0)

        assert abs(before) == pytest.approx(gamma / np.sqrt(2.0) * np.exp(-kappa * 40.0), rel=1e-10)
        assert abs(at) == pytest.approx(gamma / (2.0 * np.sqrt(2.0)), rel=1e-10)
        assert abs(after) == 0.0

    def test_inversion_quadrature_not_contained(self, make_scenario):
        """Lorentzian tails make k-space quadrature fail loudly"""
        scenario = make_scenario(shape=PulseShape.INVERSION)

        with pytest.raises(QuadratureError, match="not converged"):
            drive_term(scenario, 0, np.array([0.0, 1.0]), method="quadrature")

    def test_zero_coupling(self, make_scenario):
        """Gamma = 0 gives no drive"""
        scenario = make_scenario(eta=0.0)

        np.testing.assert_array_equal(drive_term(scenario, 0, np.arange(5.0)), 0.0)

    def test_bad_index_and_method(self, one_atom):
        """Bad atom index or method raise ValidationError"""
        with pytest.raises(ValidationError, match="out of range"):
            drive_term(one_atom, 1, 0.0)
        with pytest.raises(ValidationError, match="unknown drive method"):
            drive_term(one_atom, 0, 0.0, method="spline")

    def test_table_columns(self, two_atoms):
        """drive_table columns equal per-atom drive terms"""
        times = np.linspace(400.0, 600.0, 11)
        table = drive_table(two_atoms, times)

        assert table.shape == (11, 2)
        np.testing.assert_allclose(table[:, 1], drive_term(two_atoms, 1, times))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
