"""
Unit tests for core value types

Run with: pytest tests/unit/test_core_model.py -v
"""

import numpy as np
import pytest

from src.core.errors import ValidationError
from src.core.model import (
    RESONANT_WAVEVECTOR,
    AmplitudeTrajectory,
    ConcurrenceTrajectory,
    KGrid,
    SpectralSolution,
    SystemConfig,
    TransportSummary,
)


class TestKGrid:
    """Half-step lattice detuning grid"""

    def test_symmetric_about_center(self):
        """A center on the lattice gives an exactly symmetric grid"""
        grid = KGrid.build(center=0.01, width=0.02, extent=8.0, points=4096)

        assert grid.points == 4096
        assert grid.samples.mean() == pytest.approx(0.01, abs=1e-15)
        assert grid.samples[0] - 0.01 == pytest.approx(-(grid.samples[-1] - 0.01))

    @pytest.mark.parametrize("center", [0.0, 0.02 / 512.0, 0.02 / 1000.0, -0.0137, 0.05])
    def test_never_contains_zero(self, center):
        """Samples sit on (m + 1/2) * spacing wherever the center is"""
        grid = KGrid.build(center=center, width=0.02, points=4096)
        offsets = grid.samples / grid.spacing - 0.5

        assert np.min(np.abs(grid.samples)) >= 0.5 * grid.spacing * (1.0 - 1e-9)
        np.testing.assert_allclose(offsets, np.round(offsets), atol=1e-6)

    @pytest.mark.parametrize("center", [0.02 / 512.0, 0.02 / 1000.0, -0.0137])
    def test_off_lattice_center_within_one_step(self, center):
        """An off-lattice center shifts the grid by less than one step"""
        grid = KGrid.build(center=center, width=0.02, points=4096)

        assert abs(grid.samples.mean() - center) <= grid.spacing
        assert grid.center == center

    def test_spacing_and_width(self):
        """Step and width follow from extent and points"""
        grid = KGrid.build(center=0.0, width=0.05, extent=4.0, points=100)

        assert grid.spacing == pytest.approx(8.0 * 0.05 / 100)
        assert grid.width == pytest.approx(0.05)
        assert grid.extent == 4.0

    def test_integrate_matches_trapezoid_weights(self):
        """integrate equals the weighted sum"""
        grid = KGrid.build(center=0.0, width=1.0, extent=3.0, points=301)
        values = np.exp(-grid.samples**2)

        assert grid.integrate(values) == pytest.approx(np.sum(grid.weights() * values))
        assert grid.integrate(values) == pytest.approx(np.sqrt(np.pi), rel=1e-3)

    def test_weights_halve_endpoints(self):
        """Trapezoid weights halve the end samples"""
        grid = KGrid.build(center=0.0, width=1.0, points=16)
        weights = grid.weights()

        assert weights[0] == pytest.approx(grid.spacing / 2.0)
        assert weights[5] == pytest.approx(grid.spacing)

    def test_too_few_points(self):
        """Fewer than 8 points is rejected"""
        with pytest.raises(ValidationError, match="at least 8"):
            KGrid.build(center=0.0, width=0.02, points=4)


class TestSystemConfig:
    def test_atom_positions(self):
        """Positions start at r_1 and step by the spacing"""
        config = SystemConfig(n_atoms=3, spacing=0.25, r_1=1.0)

        np.testing.assert_allclose(config.atom_positions, [1.0, 1.25, 1.5])

    def test_default_units(self):
        """v_g = 1 and k_a = 2 pi"""
        config = SystemConfig()

        assert config.group_velocity == 1.0
        assert config.k_a == pytest.approx(RESONANT_WAVEVECTOR)
        assert config.k_a == pytest.approx(2.0 * np.pi)


class TestTrajectory:
    def test_probabilities_and_total(self):
        """Probabilities per atom and summed"""
        amplitudes = np.array([[0.0, 0.0], [0.6, 0.8j], [0.3j, -0.4]], dtype=complex)
        trajectory = AmplitudeTrajectory(times=np.arange(3.0), amplitudes=amplitudes, step=1.0)

        assert trajectory.n_atoms == 2
        np.testing.assert_allclose(trajectory.probabilities[1], [0.36, 0.64])
        np.testing.assert_allclose(trajectory.total_excitation(), [0.0, 1.0, 0.25])


class TestSpectralSolution:
    @pytest.fixture
    def grid(self):
        return KGrid.build(center=0.0, width=1.0, points=8)

    def test_densities(self, grid):
        """Densities are squared magnitudes"""
        phi = np.full(8, 2.0 + 0j)
        solution = SpectralSolution(grid=grid, phi=phi, beta_r=phi / 2.0, beta_l=1j * phi / 2.0)

        np.testing.assert_allclose(solution.input_density, 4.0)
        np.testing.assert_allclose(solution.transmitted_density, 1.0)
        np.testing.assert_allclose(solution.reflected_density, 1.0)
        np.testing.assert_allclose(solution.guided_density, 2.0)

    def test_missing_outgoing_spectra(self, grid):
        """Densities need populated outgoing spectra"""
        solution = SpectralSolution(grid=grid, phi=np.ones(8, dtype=complex))

        with pytest.raises(ValidationError, match="beta_l not populated"):
            _ = solution.reflected_density


class TestSummaries:
    def test_guided_fraction(self):
        """Guided fraction is R + T"""
        summary = TransportSummary(reflectivity=0.4, transmittivity=0.35)

        assert summary.guided_fraction == pytest.approx(0.75)
        assert summary.features == []

    def test_concurrence_maximum(self):
        """Maximum of an empty trajectory is zero"""
        assert ConcurrenceTrajectory(np.arange(3.0), np.array([0.0, 0.2, 0.1])).maximum == pytest.approx(0.2)
        assert ConcurrenceTrajectory(np.array([]), np.array([])).maximum == 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
