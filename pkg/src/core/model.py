"""
Core Model - Dimensionless unit system and shared value types

Unit conventions:
- group velocity v_g = 1, resonant wavelength lambda_a = 1, so k_a = 2*pi
- lengths (spacing, r_1) in units of lambda_a
- pulse width Delta in inverse-length units (default 0.02, narrow band)
- waveguide coupling given as eta = Gamma / (Delta * v_g)
- free-space decay given as gamma / Gamma
- center detuning in units of Delta, initial offset in units of 1/Delta

Spectral amplitudes are stored in the length-free normalization
phi = sqrt(L / 2 pi) * beta, so that the integral of |phi|^2 over dk is a
probability.

Usage:
    from src.core.model import SystemConfig, PulseSpec, KGrid

    config = SystemConfig(n_atoms=2, spacing=0.25, gamma_wg=1.0)
    pulse = PulseSpec(width=0.02)
    grid = KGrid.build(center=0.0, width=pulse.width)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.core.errors import ValidationError

logger = logging.getLogger(__name__)

GROUP_VELOCITY = 1.0
RESONANT_WAVELENGTH = 1.0
RESONANT_WAVEVECTOR = 2.0 * np.pi / RESONANT_WAVELENGTH

DEFAULT_PULSE_WIDTH = 0.02
DEFAULT_INITIAL_OFFSET = 10.0
DEFAULT_GRID_POINTS = 4096
DEFAULT_GRID_EXTENT = 8.0


class PulseShape(str, Enum):
    """Input single-photon pulse families"""
    GAUSSIAN = "gaussian"
    INVERSION = "inversion"


class FeatureKind(str, Enum):
    """Kinds of spectral feature reported by the observables layer"""
    PEAK = "peak"
    DIP = "dip"
    FWHM = "fwhm"
    BANDGAP = "bandgap"


@dataclass(frozen=True)
class SystemConfig:
    """Atomic chain coupled to the waveguide"""
    n_atoms: int = 1
    spacing: float = 0.5  # lambda_a units
    gamma_wg: float = 1.0  # eta = Gamma / (Delta v_g)
    gamma_free: float = 0.0  # gamma / Gamma
    r_1: float = 0.0
    group_velocity: float = GROUP_VELOCITY
    k_a: float = RESONANT_WAVEVECTOR
    regularize: bool = False

    @property
    def atom_positions(self) -> np.ndarray:
        """r_j = r_1 + (j - 1) * spacing, in lambda_a units"""
        return self.r_1 + self.spacing * RESONANT_WAVELENGTH * np.arange(self.n_atoms)


@dataclass(frozen=True)
class PulseSpec:
    """Input photon spectral family"""
    shape: PulseShape = PulseShape.GAUSSIAN
    width: float = DEFAULT_PULSE_WIDTH
    center_detuning: float = 0.0  # Delta units
    initial_offset: float = DEFAULT_INITIAL_OFFSET  # 1/Delta units


@dataclass(frozen=True)
class KGrid:
    """
    Uniform detuning grid.

    Samples sit on the lattice (m + 1/2) * spacing, so dk = 0 (the dark-mode
    singular point of half-wavelength chains) is never a sample. The first m
    is chosen so the grid covers center +/- extent * width to within one step.
    """
    samples: np.ndarray
    spacing: float
    extent: float  # half-width in units of Delta
    center: float

    @classmethod
    def build(
        cls,
        center: float,
        width: float,
        extent: float = DEFAULT_GRID_EXTENT,
        points: int = DEFAULT_GRID_POINTS,
    ) -> "KGrid":
        """
        Build the half-step lattice grid over center +/- extent * width.

        Args:
            center: Grid center (detuning, inverse length)
            width: Pulse width Delta
            extent: Half-width in units of Delta
            points: Number of samples

        Returns:
            KGrid instance
        """
        if points < 8:
            raise ValidationError(f"grid.points must be at least 8, got {points}")
        half = extent * width
        step = 2.0 * half / points
        first = np.round((center - half) / step)
        samples = (first + np.arange(points) + 0.5) * step
        return cls(samples=samples, spacing=step, extent=extent, center=center)

    @property
    def points(self) -> int:
        return int(self.samples.size)

    @property
    def width(self) -> float:
        """Pulse width Delta the grid was built for"""
        return self.spacing * self.points / (2.0 * self.extent)

    def weights(self) -> np.ndarray:
        """Composite trapezoid weights on the samples"""
        w = np.full(self.points, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def integrate(self, values: np.ndarray) -> float:
        """Trapezoid integral of real values sampled on the grid"""
        return float(np.trapezoid(values, dx=self.spacing))


@dataclass(frozen=True)
class AmplitudeTrajectory:
    """Atomic amplitudes alpha_j(t_i) on a uniform time grid"""
    times: np.ndarray
    amplitudes: np.ndarray  # shape (n_times, n_atoms)
    step: float
    warnings: Tuple[str, ...] = ()

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def n_atoms(self) -> int:
        return int(self.amplitudes.shape[1])

    def total_excitation(self) -> np.ndarray:
        """Sum over atoms of |alpha_j(t)|^2"""
        return self.probabilities.sum(axis=1)


@dataclass(frozen=True)
class SpectralSolution:
    """
    Spectral amplitudes on a KGrid.

    phi is the translated input spectrum; chi, beta_r and beta_l are filled in
    by successive pipeline stages (dataclasses.replace). time is None for the
    stationary (t -> infinity) solution.
    """
    grid: KGrid
    phi: np.ndarray
    chi: Optional[np.ndarray] = None  # shape (n_k, n_atoms)
    beta_r: Optional[np.ndarray] = None
    beta_l: Optional[np.ndarray] = None
    time: Optional[float] = None
    residual: Optional[float] = None
    warnings: Tuple[str, ...] = ()

    @property
    def input_density(self) -> np.ndarray:
        return np.abs(self.phi) ** 2

    @property
    def reflected_density(self) -> np.ndarray:
        return np.abs(self._require(self.beta_l, "beta_l")) ** 2

    @property
    def transmitted_density(self) -> np.ndarray:
        return np.abs(self._require(self.beta_r, "beta_r")) ** 2

    @property
    def guided_density(self) -> np.ndarray:
        return self.reflected_density + self.transmitted_density

    @staticmethod
    def _require(values: Optional[np.ndarray], name: str) -> np.ndarray:
        if values is None:
            raise ValidationError(f"{name} not populated; run outgoing_spectra first")
        return values


@dataclass(frozen=True)
class SpectralFeature:
    """A located feature of a spectral density"""
    kind: FeatureKind
    channel: str  # input, reflected, transmitted
    location: float  # detuning in units of Delta
    width: Optional[float] = None  # Delta * v_g units
    bounds: Optional[Tuple[float, float]] = None  # Delta units
    threshold: Optional[float] = None
    value: Optional[float] = None


@dataclass(frozen=True)
class TransportSummary:
    """Reflectivity, transmittivity and located spectral features"""
    reflectivity: float
    transmittivity: float
    features: List[SpectralFeature] = field(default_factory=list)
    warnings: Tuple[str, ...] = ()

    @property
    def guided_fraction(self) -> float:
        return self.reflectivity + self.transmittivity


@dataclass(frozen=True)
class ConcurrenceTrajectory:
    """Two-atom concurrence C(t)"""
    times: np.ndarray
    values: np.ndarray

    @property
    def maximum(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0
