"""
Parameter scans - frequency-domain transport over one scenario axis

Features:
- Axes: center detuning, spacing, coupling (eta), atom number
- Thread pool over axis values with output in input order
- Per-point failures recorded in the row; the scan continues
- FWHM of the reflectivity curve over the axis

Usage:
    from src.observables.scan import ScenarioTemplate, ScanAxis, parameter_scan

    template = ScenarioTemplate(SystemConfig(n_atoms=2, spacing=0.25), PulseSpec())
    table = parameter_scan(template, ScanAxis.COUPLING, [0.5, 1.0, 2.0])
    for row in table.rows:
        print(row.value, row.reflectivity)
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from src.core.errors import ValidationError, WgqedError
from src.core.model import DEFAULT_GRID_EXTENT, DEFAULT_GRID_POINTS, PulseSpec, SpectralFeature, SystemConfig
from src.core.validation import ValidatedScenario, default_grid, validate
from src.freq_domain.solver import solve_spectra
from src.observables.features import curve_fwhm, spectral_features
from src.observables.transport import reflect_transmit

logger = logging.getLogger(__name__)


class ScanAxis(str, Enum):
    DETUNING = "detuning"
    SPACING = "spacing"
    COUPLING = "coupling"
    N_ATOMS = "n_atoms"


@dataclass(frozen=True)
class ScenarioTemplate:
    """Unvalidated scenario that a scan varies along one axis"""
    config: SystemConfig
    pulse: PulseSpec
    grid_points: int = DEFAULT_GRID_POINTS
    grid_extent: float = DEFAULT_GRID_EXTENT

    def at(self, axis: ScanAxis, value: float) -> ValidatedScenario:
        """Validated scenario with the axis set to value"""
        config, pulse = self.config, self.pulse
        if axis == ScanAxis.DETUNING:
            pulse = replace(pulse, center_detuning=float(value))
        elif axis == ScanAxis.SPACING:
            config = replace(config, spacing=float(value))
        elif axis == ScanAxis.COUPLING:
            config = replace(config, gamma_wg=float(value))
        else:
            if float(value) != int(value):
                raise ValidationError(f"n_atoms scan values must be integers, got {value}")
            config = replace(config, n_atoms=int(value))
        return validate(config, pulse, default_grid(pulse, self.grid_points, self.grid_extent))


@dataclass(frozen=True)
class ScanRow:
    value: float
    reflectivity: float = float("nan")
    transmittivity: float = float("nan")
    features: List[SpectralFeature] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def guided_fraction(self) -> float:
        return self.reflectivity + self.transmittivity


@dataclass(frozen=True)
class ScanTable:
    axis: ScanAxis
    rows: List[ScanRow]

    @property
    def values(self) -> np.ndarray:
        return np.array([row.value for row in self.rows], dtype=float)

    @property
    def reflectivity(self) -> np.ndarray:
        return np.array([row.reflectivity for row in self.rows], dtype=float)

    @property
    def transmittivity(self) -> np.ndarray:
        return np.array([row.transmittivity for row in self.rows], dtype=float)

    def reflectivity_fwhm(self) -> Optional[float]:
        """FWHM of R over the axis values (failed rows skipped)"""
        ok = np.isfinite(self.reflectivity)
        return curve_fwhm(self.values[ok], self.reflectivity[ok])


def _scan_point(template: ScenarioTemplate, axis: ScanAxis, value: float, with_features: bool) -> ScanRow:
    try:
        scenario = template.at(axis, value)
        spectra = solve_spectra(scenario)
        features = spectral_features(spectra) if with_features else []
        summary = reflect_transmit(spectra, features)
        return ScanRow(
            value=float(value),
            reflectivity=summary.reflectivity,
            transmittivity=summary.transmittivity,
            features=summary.features,
        )
    except WgqedError as e:
        logger.warning(f"Scan point {axis.value}={value} failed: {e}")
        return ScanRow(value=float(value), error=str(e))


def parameter_scan(
    template: ScenarioTemplate,
    axis: ScanAxis,
    values: Sequence[float],
    threads: Optional[int] = None,
    with_features: bool = True,
) -> ScanTable:
    """
    Run the frequency-domain pipeline for every axis value.

    Args:
        template: Scenario to vary
        axis: Axis to scan
        values: Axis values, in scenario units (Delta for detuning, lambda for spacing)
        threads: Worker cap (None: executor default)
        with_features: Locate spectral features per point

    Returns:
        ScanTable with one row per value, in input order
    """
    axis = ScanAxis(axis)
    values = list(values)
    if not values:
        raise ValidationError("scan needs at least one value")
    logger.info(f"Scanning {axis.value} over {len(values)} values")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(lambda v: _scan_point(template, axis, v, with_features), values))
    failed = sum(row.error is not None for row in rows)
    if failed:
        logger.warning(f"{failed}/{len(rows)} scan points failed")
    return ScanTable(axis=axis, rows=rows)
