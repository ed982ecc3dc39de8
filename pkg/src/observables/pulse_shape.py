"""
Real-space pulse shapes by Fourier synthesis of the outgoing spectra

    beta_R(x, t) = (2 pi)^(-1/2) integral phi_R(dk) e^{ i (k_a + dk) x - i dk v_g t} ddk
    beta_L(x, t) = (2 pi)^(-1/2) integral phi_L(dk) e^{-i (k_a + dk) x - i dk v_g t} ddk

The (2 pi)^(-1/2) normalization makes integral |beta_L(x)|^2 dx = R.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.core.model import RESONANT_WAVEVECTOR, SpectralSolution

logger = logging.getLogger(__name__)

X_CHUNK = 256
# Spatial extent of a pulse, in units of 1/Delta
PULSE_EXTENT = 12.0


@dataclass(frozen=True)
class PulseProfile:
    """Complex field amplitudes on an x-grid at one time"""
    x: np.ndarray
    time: float
    incoming: np.ndarray
    right: np.ndarray
    left: np.ndarray
    warnings: Tuple[str, ...] = ()

    @property
    def incoming_density(self) -> np.ndarray:
        return np.abs(self.incoming) ** 2

    @property
    def right_density(self) -> np.ndarray:
        return np.abs(self.right) ** 2

    @property
    def left_density(self) -> np.ndarray:
        return np.abs(self.left) ** 2


def pulse_shape(
    spectra: SpectralSolution,
    x_grid: np.ndarray,
    t: float,
    v_g: float = 1.0,
    k_a: float = RESONANT_WAVEVECTOR,
) -> PulseProfile:
    """
    Synthesize incoming, transmitted (right) and reflected (left) pulses.

    Args:
        spectra: Spectral solution with outgoing spectra on its KGrid
        x_grid: Uniform positions
        t: Time
        v_g: Group velocity
        k_a: Resonant wavevector (carrier)

    Returns:
        PulseProfile; warnings note an x-grid too short for the pulses or
        positions beyond the alias-free window 2 pi / h_k
    """
    x = np.asarray(x_grid, dtype=float)
    grid = spectra.grid
    delta_k = grid.samples
    weights = grid.weights() / np.sqrt(2.0 * np.pi)
    time_phase = np.exp(-1j * delta_k * v_g * t)

    incoming = _synthesize(x, delta_k, spectra.phi * weights * time_phase, sign=1.0, k_a=k_a)
    right = _synthesize(x, delta_k, spectra.beta_r * weights * time_phase, sign=1.0, k_a=k_a)
    left = _synthesize(x, delta_k, spectra.beta_l * weights * time_phase, sign=-1.0, k_a=k_a)

    warnings = []
    required = v_g * abs(t) + PULSE_EXTENT / grid.width
    span = float(x.max() - x.min()) if x.size else 0.0
    if span < required:
        msg = f"x-grid span {span:.4g} shorter than v_g t + pulse extent {required:.4g}"
        logger.warning(msg)
        warnings.append(msg)
    window = np.pi / grid.spacing
    reach = float(np.max(np.abs(x))) + v_g * abs(t) if x.size else 0.0
    if reach > window:
        msg = f"aliasing: |x| + v_g t = {reach:.4g} exceeds the alias-free window {window:.4g}"
        logger.warning(msg)
        warnings.append(msg)

    return PulseProfile(x=x, time=float(t), incoming=incoming, right=right, left=left, warnings=tuple(warnings))


def _synthesize(
    x: np.ndarray,
    delta_k: np.ndarray,
    weighted: Optional[np.ndarray],
    sign: float,
    k_a: float,
) -> np.ndarray:
    if weighted is None:
        return np.zeros(x.size, dtype=complex)
    out = np.empty(x.size, dtype=complex)
    k = k_a + delta_k
    for start in range(0, x.size, X_CHUNK):
        block = x[start:start + X_CHUNK]
        out[start:start + X_CHUNK] = np.exp(sign * 1j * np.outer(block, k)) @ weighted
    return out
