"""
Scenario validation - turns raw configuration into a checked, derived scenario

Features:
- Invariant checks on SystemConfig, PulseSpec and KGrid
- Derived physical quantities (Gamma, gamma, positions, arrival time)
- Spectral truncation checks for the k-grid, including inversion pulses

Usage:
    from src.core.validation import validate

    scenario = validate(SystemConfig(n_atoms=2, spacing=0.5), PulseSpec())
    print(scenario.gamma, scenario.positions)
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.core.errors import SpectralTruncationError, ValidationError
from src.core.model import (
    DEFAULT_GRID_EXTENT,
    DEFAULT_GRID_POINTS,
    KGrid,
    PulseShape,
    PulseSpec,
    SystemConfig,
)

logger = logging.getLogger(__name__)

MIN_GRID_EXTENT = 3.0
# Inversion spectra: Lorentzian half-width must span this many grid steps
INVERSION_MIN_SAMPLES = 4.0
INVERSION_MAX_TAIL = 0.1


@dataclass(frozen=True)
class ValidatedScenario:
    """A scenario whose invariants hold, with derived quantities exposed"""
    config: SystemConfig
    pulse: PulseSpec
    grid: KGrid
    warnings: Tuple[str, ...] = ()

    @property
    def n_atoms(self) -> int:
        return self.config.n_atoms

    @property
    def delta(self) -> float:
        """Pulse width Delta"""
        return self.pulse.width

    @property
    def eta(self) -> float:
        return self.config.gamma_wg

    @property
    def v_g(self) -> float:
        return self.config.group_velocity

    @property
    def k_a(self) -> float:
        return self.config.k_a

    @property
    def gamma(self) -> float:
        """Waveguide decay rate Gamma = eta * Delta * v_g"""
        return self.config.gamma_wg * self.pulse.width * self.config.group_velocity

    @property
    def gamma_free(self) -> float:
        """Free-space decay rate gamma"""
        return self.config.gamma_free * self.gamma

    @property
    def positions(self) -> np.ndarray:
        return self.config.atom_positions

    @property
    def spacing(self) -> float:
        return float(self.config.spacing)

    @property
    def resonance_phase(self) -> float:
        """k_a * a"""
        return self.config.k_a * self.config.spacing

    @property
    def center(self) -> float:
        """Center detuning delta_0 = k_0 - k_a"""
        return self.pulse.center_detuning * self.pulse.width

    @property
    def offset(self) -> float:
        """Distance d_0 between pulse center and first atom at t = 0"""
        return self.pulse.initial_offset / self.pulse.width

    @property
    def pulse_origin(self) -> float:
        """x_0 = r_1 - d_0"""
        return float(self.positions[0]) - self.offset

    @property
    def arrival_time(self) -> float:
        """Time at which the pulse center reaches the first atom"""
        return self.offset / self.config.group_velocity

    def with_grid(self, grid: KGrid) -> "ValidatedScenario":
        """Return a copy on another k-grid, re-running the grid checks"""
        return validate(self.config, self.pulse, grid)


def default_grid(
    pulse: PulseSpec,
    points: int = DEFAULT_GRID_POINTS,
    extent: float = DEFAULT_GRID_EXTENT,
) -> KGrid:
    """Default k-grid centered on the pulse detuning"""
    return KGrid.build(
        center=pulse.center_detuning * pulse.width,
        width=pulse.width,
        extent=extent,
        points=points,
    )


def validate(
    config: SystemConfig,
    pulse: PulseSpec,
    grid: Optional[KGrid] = None,
) -> ValidatedScenario:
    """
    Check all invariants and derive the scenario.

    Args:
        config: Atomic chain configuration
        pulse: Input pulse specification
        grid: k-grid (default: 4096 points over delta_0 +/- 8 Delta)

    Returns:
        ValidatedScenario

    Raises:
        ValidationError: If any invariant is violated
        SpectralTruncationError: If the grid cannot hold the input spectrum
    """
    warnings = []

    if not math.isfinite(pulse.width) or pulse.width <= 0:
        raise ValidationError(f"degenerate pulse width: pulse.width must be > 0, got {pulse.width}")
    if not math.isfinite(pulse.initial_offset) or pulse.initial_offset < 0:
        raise ValidationError(f"pulse.initial_offset must be >= 0, got {pulse.initial_offset}")
    if not math.isfinite(pulse.center_detuning):
        raise ValidationError("pulse.center_detuning must be finite")
    if config.n_atoms < 1:
        raise ValidationError(f"system.n_atoms must be >= 1, got {config.n_atoms}")
    if not math.isfinite(config.spacing) or config.spacing < 0:
        raise ValidationError(f"system.spacing must be >= 0, got {config.spacing}")
    if not math.isfinite(config.gamma_wg) or config.gamma_wg < 0:
        raise ValidationError(f"non-positive coupling: system.eta must be >= 0, got {config.gamma_wg}")
    if not math.isfinite(config.gamma_free) or config.gamma_free < 0:
        raise ValidationError(f"system.gamma_free must be >= 0, got {config.gamma_free}")
    if config.group_velocity <= 0 or config.k_a <= 0:
        raise ValidationError("group_velocity and k_a must be positive")

    if config.gamma_wg == 0:
        msg = "eta = 0: atoms are decoupled from the waveguide"
        logger.warning(msg)
        warnings.append(msg)

    if grid is None:
        grid = default_grid(pulse)

    if grid.extent < MIN_GRID_EXTENT:
        raise SpectralTruncationError(
            f"spectral truncation: grid.extent {grid.extent} < {MIN_GRID_EXTENT} Delta"
        )

    if pulse.shape == PulseShape.INVERSION:
        _check_inversion_grid(config, pulse, grid)

    scenario = ValidatedScenario(config=config, pulse=pulse, grid=grid, warnings=tuple(warnings))
    logger.debug(
        f"Validated scenario: n_atoms={config.n_atoms}, spacing={config.spacing}, "
        f"eta={config.gamma_wg}, gamma_free={config.gamma_free}, shape={pulse.shape.value}, "
        f"grid={grid.points}x{grid.extent}"
    )
    return scenario


def _check_inversion_grid(config: SystemConfig, pulse: PulseSpec, grid: KGrid) -> None:
    """The Lorentzian of half-width Gamma/2v_g must be resolved and contained"""
    kappa = config.gamma_wg * pulse.width / 2.0
    if kappa <= 0:
        raise SpectralTruncationError("spectral truncation: inversion pulse needs eta > 0")
    if grid.spacing * INVERSION_MIN_SAMPLES > kappa:
        raise SpectralTruncationError(
            f"spectral truncation: inversion half-width {kappa:.3e} not resolved "
            f"by grid step {grid.spacing:.3e}"
        )
    center = pulse.center_detuning * pulse.width
    lo = grid.samples[0] - 0.5 * grid.spacing - center
    hi = grid.samples[-1] + 0.5 * grid.spacing - center
    inside = (math.atan(hi / kappa) - math.atan(lo / kappa)) / math.pi
    if 1.0 - inside > INVERSION_MAX_TAIL:
        raise SpectralTruncationError(
            f"spectral truncation: {1.0 - inside:.1%} of the inversion spectrum "
            f"lies outside the grid"
        )

