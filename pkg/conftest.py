"""
Shared pytest fixtures: scenario factories for the solver tests.
"""

import pytest

from src.core.model import PulseShape, PulseSpec, SystemConfig
from src.core.validation import default_grid, validate


@pytest.fixture
def make_scenario():
    """
    Factory for validated scenarios.

    Usage:
        scenario = make_scenario(n_atoms=2, spacing=0.25, eta=1.0)
    """

    def _make(
        n_atoms=1,
        spacing=0.5,
        eta=1.0,
        gamma_free=0.0,
        shape=PulseShape.GAUSSIAN,
        width=0.02,
        center_detuning=0.0,
        initial_offset=10.0,
        points=4096,
        extent=8.0,
        regularize=False,
        r_1=0.0,
    ):
        config = SystemConfig(
            n_atoms=n_atoms,
            spacing=spacing,
            gamma_wg=eta,
            gamma_free=gamma_free,
            r_1=r_1,
            regularize=regularize,
        )
        pulse = PulseSpec(shape=shape, width=width, center_detuning=center_detuning, initial_offset=initial_offset)
        return validate(config, pulse, default_grid(pulse, points, extent))

    return _make


@pytest.fixture
def one_atom(make_scenario):
    return make_scenario()


@pytest.fixture
def two_atoms(make_scenario):
    """Two atoms at a = lambda/4, eta = 1"""
    return make_scenario(n_atoms=2, spacing=0.25)


@pytest.fixture
def scenario_document():
    """Minimal valid scenario file contents"""
    return {
        "system": {"n_atoms": 1, "spacing": 0.5, "eta": 1.0},
        "pulse": {"shape": "gaussian", "width": 0.02},
    }
