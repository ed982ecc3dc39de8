"""
Unit tests for scenario validation

Run with: pytest tests/unit/test_validation.py -v
"""

import numpy as np
import pytest

from src.core.errors import SpectralTruncationError, ValidationError
from src.core.model import KGrid, PulseShape, PulseSpec, SystemConfig
from src.core.validation import default_grid, validate


class TestDerivedQuantities:
    """Quantities exposed by ValidatedScenario"""

    def test_rates(self, make_scenario):
        """Gamma = eta Delta v_g and gamma = gamma_free Gamma"""
        scenario = make_scenario(eta=2.0, gamma_free=0.2, width=0.02)

        assert scenario.gamma == pytest.approx(0.04)
        assert scenario.gamma_free == pytest.approx(0.008)
        assert scenario.eta == 2.0

    def test_pulse_placement(self, one_atom):
        """Pulse starts d_0 = 10/Delta left of the first atom"""
        # d_0 = 10 / Delta, first atom at the origin
        assert one_atom.offset == pytest.approx(500.0)
        assert one_atom.pulse_origin == pytest.approx(-500.0)
        assert one_atom.arrival_time == pytest.approx(500.0)

    def test_center_detuning_in_delta_units(self, make_scenario):
        """Center detuning is given in units of Delta"""
        scenario = make_scenario(center_detuning=0.5)

        assert scenario.center == pytest.approx(0.01)
        assert scenario.grid.center == pytest.approx(0.01)

    def test_resonance_phase(self, two_atoms):
        """k_a a is pi/2 for a lambda/4 pair"""
        assert two_atoms.resonance_phase == pytest.approx(np.pi / 2.0)
        np.testing.assert_allclose(two_atoms.positions, [0.0, 0.25])

    def test_default_grid(self, one_atom):
        """Default grid is 4096 points over +/- 8 Delta"""
        assert one_atom.grid.points == 4096
        assert one_atom.grid.extent == 8.0
        assert one_atom.grid.width == pytest.approx(0.02)

    def test_with_grid(self, one_atom):
        """with_grid swaps the grid only"""
        coarse = KGrid.build(center=0.0, width=0.02, points=512)

        assert one_atom.with_grid(coarse).grid.points == 512


class TestRejections:
    """Every invariant violation raises ValidationError"""

    def test_degenerate_width(self):
        """Zero width is rejected"""
        with pytest.raises(ValidationError, match="degenerate pulse width"):
            validate(SystemConfig(), PulseSpec(width=0.0))

    def test_negative_coupling(self):
        """Negative eta is rejected"""
        with pytest.raises(ValidationError, match="non-positive coupling"):
            validate(SystemConfig(gamma_wg=-1.0), PulseSpec())

    def test_no_atoms(self):
        """n_atoms must be positive"""
        with pytest.raises(ValidationError, match="n_atoms"):
            validate(SystemConfig(n_atoms=0), PulseSpec())

    def test_negative_spacing(self):
        """Spacing must be non-negative"""
        with pytest.raises(ValidationError, match="spacing"):
            validate(SystemConfig(n_atoms=2, spacing=-0.25), PulseSpec())

    def test_negative_free_space_decay(self):
        """gamma_free must be non-negative"""
        with pytest.raises(ValidationError, match="gamma_free"):
            validate(SystemConfig(gamma_free=-0.1), PulseSpec())

    def test_negative_offset(self):
        """initial_offset must be non-negative"""
        with pytest.raises(ValidationError, match="initial_offset"):
            validate(SystemConfig(), PulseSpec(initial_offset=-1.0))

    def test_zero_coupling_warns(self):
        """eta = 0 is accepted with a warning"""
        scenario = validate(SystemConfig(gamma_wg=0.0), PulseSpec())

        assert scenario.gamma == 0.0
        assert any("decoupled" in w for w in scenario.warnings)


class TestSpectralTruncation:
    def test_narrow_grid(self):
        """A grid narrower than the pulse is truncation"""
        pulse = PulseSpec()

        with pytest.raises(SpectralTruncationError, match="spectral truncation"):
            validate(SystemConfig(), pulse, default_grid(pulse, extent=2.0))

    def test_truncation_is_a_validation_error(self):
        """Truncation maps to exit code 2"""
        assert issubclass(SpectralTruncationError, ValidationError)
        assert SpectralTruncationError.exit_code == 2

    def test_inversion_on_default_grid(self, make_scenario):
        """Inversion pulse fits the default grid"""
        scenario = make_scenario(shape=PulseShape.INVERSION)

        assert scenario.pulse.shape == PulseShape.INVERSION

    def test_inversion_unresolved(self, make_scenario):
        """Lorentzian narrower than the step is refused"""
        # grid step 2 Delta against a half-width of Delta / 2
        with pytest.raises(SpectralTruncationError, match="not resolved"):
            make_scenario(shape=PulseShape.INVERSION, points=8)

    def test_inversion_tail_outside_grid(self, make_scenario):
        """Lorentzian tails outside the grid are refused"""
        # 1 - (2/pi) atan(6) = 10.5% of the Lorentzian outside +/- 3 Delta
        with pytest.raises(SpectralTruncationError, match="outside the grid"):
            make_scenario(shape=PulseShape.INVERSION, extent=3.0)

    def test_inversion_needs_coupling(self, make_scenario):
        """Inversion pulse needs eta > 0"""
        with pytest.raises(SpectralTruncationError):
            make_scenario(shape=PulseShape.INVERSION, eta=0.0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
