"""
Unit tests for the single-atom analytic oracle

Run with: pytest tests/unit/test_analytic.py -v
"""

import numpy as np
import pytest
from scipy.integrate import quad

from src.core.errors import ValidationError
from src.core.model import PulseShape
from src.pulse.spectra import drive_term
from src.time_domain.analytic import single_atom_analytic


def _direct_integral(scenario, t):
    """alpha(t) = integral_0^t b(t') exp(-(Gamma/2)(t - t')) dt' by adaptive quadrature"""
    rate = (scenario.gamma + scenario.gamma_free) / 2.0

    def integrand(tp, part):
        value = complex(drive_term(scenario, 0, tp)) * np.exp(-rate * (t - tp))
        return value.real if part == 0 else value.imag

    kwargs = dict(
        limit=400,
        epsabs=1e-13,
        epsrel=1e-12,
        points=[scenario.arrival_time] if 0 < scenario.arrival_time < t else None,
    )
    real, _ = quad(integrand, 0.0, t, args=(0,), **kwargs)
    imag, _ = quad(integrand, 0.0, t, args=(1,), **kwargs)
    return real + 1j * imag


class TestSingleAtomAnalytic:
    @pytest.mark.parametrize("t", [300.0, 480.0, 500.0, 560.0, 900.0])
    def test_matches_quadrature(self, one_atom, t):
        """Closed form equals direct numerical integration"""
        assert single_atom_analytic(one_atom, t) == pytest.approx(_direct_integral(one_atom, t), abs=1e-9)

    def test_detuned_pulse(self, make_scenario):
        """Closed form holds for a detuned, strongly coupled pulse"""
        scenario = make_scenario(center_detuning=0.5, eta=2.0)
        t = 620.0

        assert single_atom_analytic(scenario, t) == pytest.approx(_direct_integral(scenario, t), abs=1e-9)

    def test_peak_excitation(self, one_atom):
        """eta = 1 peak excitation is about 0.40"""
        times = np.linspace(0.0, 2000.0, 4001)
        peak = np.max(np.abs(single_atom_analytic(one_atom, times)) ** 2)

        assert peak == pytest.approx(0.40, abs=0.02)

    def test_starts_and_ends_near_zero(self, one_atom):
        """Atom starts in the ground state and decays back"""
        values = single_atom_analytic(one_atom, np.array([0.0, 2000.0]))

        assert abs(values[0]) == 0.0
        assert abs(values[1]) < 1e-6

    def test_long_times_stay_finite(self, one_atom):
        """Scaled erfc keeps late times finite"""
        # exp(Gamma t / 2) alone overflows here
        values = single_atom_analytic(one_atom, np.array([1e5, 1e6]))

        assert np.all(np.isfinite(values))

    def test_zero_coupling(self, make_scenario):
        """Gamma = 0 leaves the atom unexcited"""
        scenario = make_scenario(eta=0.0)

        np.testing.assert_array_equal(single_atom_analytic(scenario, np.arange(3.0)), 0.0)

    def test_rejects_two_atoms(self, two_atoms):
        """Only single-atom scenarios are accepted"""
        with pytest.raises(ValidationError, match="n_atoms = 1"):
            single_atom_analytic(two_atoms, 1.0)

    def test_rejects_inversion(self, make_scenario):
        """Only Gaussian pulses are accepted"""
        with pytest.raises(ValidationError, match="gaussian"):
            single_atom_analytic(make_scenario(shape=PulseShape.INVERSION), 1.0)

    def test_free_space_decay_experimental(self, make_scenario, caplog):
        """Free-space decay is allowed but logged as experimental"""
        scenario = make_scenario(gamma_free=0.5)

        value = single_atom_analytic(scenario, 520.0)

        assert "experimental" in caplog.text
        assert value == pytest.approx(_direct_integral(scenario, 520.0), abs=1e-9)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
