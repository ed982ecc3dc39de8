"""
Unit tests for spectral feature detection

Run with: pytest tests/unit/test_features.py -v
"""

import numpy as np
import pytest

from src.core.model import FeatureKind
from src.freq_domain.solver import solve_spectra
from src.observables.features import (
    FeatureThresholds,
    bandgaps,
    curve_fwhm,
    refine_extremum,
    select,
    spectral_features,
)


@pytest.fixture
def one_atom_features(one_atom):
    return spectral_features(solve_spectra(one_atom))


class TestHelpers:
    def test_refine_extremum_recovers_vertex(self):
        """Parabolic refinement finds the exact vertex"""
        x = np.linspace(-1.0, 1.0, 21)
        y = 3.0 - (x - 0.037) ** 2
        index = int(np.argmax(y))

        location, value = refine_extremum(x, y, index)

        assert location == pytest.approx(0.037)
        assert value == pytest.approx(3.0)

    def test_refine_extremum_at_edge(self):
        """Edge samples are returned as is"""
        x = np.arange(5.0)
        y = np.array([5.0, 4.0, 3.0, 2.0, 1.0])

        assert refine_extremum(x, y, 0) == (0.0, 5.0)

    def test_curve_fwhm_gaussian(self):
        """Gaussian FWHM is 2 sqrt(2 ln 2) sigma"""
        x = np.linspace(-10.0, 10.0, 20001)
        y = np.exp(-(x**2) / 2.0)

        assert curve_fwhm(x, y) == pytest.approx(2.0 * np.sqrt(2.0 * np.log(2.0)), abs=1e-6)

    def test_curve_fwhm_missing_crossing(self):
        """No half-max crossing gives None"""
        x = np.linspace(0.0, 1.0, 11)

        assert curve_fwhm(x, x) is None
        assert curve_fwhm(x, np.zeros_like(x)) is None

    def test_bandgap_window(self):
        """Gap is the window below the transmission threshold"""
        x = np.linspace(-2.0, 2.0, 4001)
        incoming = np.ones_like(x)
        transmitted = np.where(np.abs(x) < 0.5, 0.0, 1.0)

        (gap,) = bandgaps(x, transmitted, incoming, threshold=0.01)

        assert gap.location == pytest.approx(0.0, abs=1e-3)
        assert gap.width == pytest.approx(1.0, abs=3e-3)
        assert gap.value == 0.0

    def test_bandgap_ignores_empty_input(self):
        """Zero input has no gaps"""
        x = np.linspace(-1.0, 1.0, 101)

        assert bandgaps(x, np.zeros_like(x), np.zeros_like(x)) == []


class TestSingleAtomFeatures:
    """Features of the eta = 1 single-atom spectra"""

    def test_input_width(self, one_atom_features):
        """Input |phi|^2 FWHM is sqrt(2 ln 2) Delta"""
        (fwhm,) = select(one_atom_features, FeatureKind.FWHM, "input")

        assert fwhm.width == pytest.approx(2.0 * np.sqrt(np.log(2.0) / 2.0), abs=1e-3)

    def test_reflected_peak_on_resonance(self, one_atom_features):
        """Reflected spectrum peaks on resonance"""
        (peak,) = select(one_atom_features, FeatureKind.PEAK, "reflected")

        assert peak.location == pytest.approx(0.0, abs=1e-6)

    def test_reflected_narrower_than_input(self, one_atom_features):
        """Reflected spectrum is narrower than the input"""
        (reflected,) = select(one_atom_features, FeatureKind.FWHM, "reflected")
        (incoming,) = select(one_atom_features, FeatureKind.FWHM, "input")

        assert reflected.width < incoming.width

    def test_transmission_peaks(self, one_atom_features):
        """Transmitted peaks sit at +/- Delta/2 for eta = 1"""
        peaks = select(one_atom_features, FeatureKind.PEAK, "transmitted")

        assert [p.location for p in peaks] == pytest.approx([-0.5, 0.5], abs=1e-3)

    def test_transmission_dip(self, one_atom_features):
        """Transmission dip on resonance is nearly zero"""
        (dip,) = select(one_atom_features, FeatureKind.DIP, "transmitted")

        assert dip.location == pytest.approx(0.0, abs=1e-6)
        assert dip.value < 1e-4

    def test_bandgap(self, one_atom_features):
        """1% gap width follows the single-atom Lorentzian"""
        (gap,) = select(one_atom_features, FeatureKind.BANDGAP)

        # |t|^2 < 0.01 for |dk| < 0.1005 Gamma / 2
        assert gap.width == pytest.approx(2.0 * 0.5 * np.sqrt(0.01 / 0.99), abs=1e-3)
        assert gap.location == pytest.approx(0.0, abs=1e-6)

    def test_higher_bandgap_threshold_widens(self, one_atom):
        """A looser threshold widens the gap"""
        spectra = solve_spectra(one_atom)
        (narrow,) = select(spectral_features(spectra), FeatureKind.BANDGAP)
        (wide,) = select(spectral_features(spectra, FeatureThresholds(bandgap=0.1)), FeatureKind.BANDGAP)

        assert wide.width > narrow.width

    def test_decoupled_atoms_have_no_gap(self, make_scenario):
        """eta = 0 shows no gap and no reflection"""
        features = spectral_features(solve_spectra(make_scenario(eta=0.0)))

        assert select(features, FeatureKind.BANDGAP) == []
        assert select(features, FeatureKind.PEAK, "reflected") == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
