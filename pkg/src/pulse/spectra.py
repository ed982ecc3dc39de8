"""
Pulse spectra - Input single-photon spectral amplitudes and atomic drive terms

Features:
- Square-normalized Gaussian and inversion (Lorentzian) spectral amplitudes
- Input spectrum translated so the pulse starts d_0 left of the first atom
- Drive terms b_j(t) in closed form or by trapezoid quadrature over the k-grid
- Drive tables on a time grid for the delay-equation integrator

Usage:
    from src.pulse.spectra import input_spectrum, drive_term

    phi = input_spectrum(scenario)           # values on scenario.grid
    b = drive_term(scenario, 0, times)       # closed form
"""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.core.errors import QuadratureError, ValidationError
from src.core.model import PulseShape, PulseSpec
from src.core.validation import ValidatedScenario

logger = logging.getLogger(__name__)

# Relative boundary amplitude above which k-space quadrature is untrustworthy
QUADRATURE_BOUNDARY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SpectralAmplitude:
    """phi(dk) plus its support metadata"""
    shape: PulseShape
    center: float
    bandwidth: float  # Delta for gaussian, half-width kappa for inversion
    function: Callable[[np.ndarray], np.ndarray]

    def __call__(self, delta_k) -> np.ndarray:
        return self.function(np.asarray(delta_k, dtype=float))

    def norm(self, delta_k: np.ndarray) -> float:
        """Trapezoid integral of |phi|^2 over the given uniform samples"""
        delta_k = np.asarray(delta_k, dtype=float)
        return float(np.trapezoid(np.abs(self(delta_k)) ** 2, delta_k))


def gaussian_spectrum(pulse: PulseSpec) -> SpectralAmplitude:
    """
    Gaussian spectral amplitude (8 pi)^(1/4) / sqrt(2 pi Delta) exp(-(dk - d0)^2 / Delta^2).

    Args:
        pulse: Pulse specification with shape gaussian

    Returns:
        Real, positive, square-normalized SpectralAmplitude peaked at delta_0
    """
    if pulse.shape != PulseShape.GAUSSIAN:
        raise ValidationError(f"gaussian_spectrum needs shape gaussian, got {pulse.shape.value}")
    width = pulse.width
    center = pulse.center_detuning * width
    norm = (8.0 * np.pi) ** 0.25 / np.sqrt(2.0 * np.pi * width)

    def phi(delta_k: np.ndarray) -> np.ndarray:
        return norm * np.exp(-((delta_k - center) / width) ** 2)

    return SpectralAmplitude(PulseShape.GAUSSIAN, center, width, phi)


def inversion_spectrum(pulse: PulseSpec, gamma: float, v_g: float = 1.0) -> SpectralAmplitude:
    """
    Lorentzian amplitude sqrt(kappa/pi) / (kappa + i (dk - d0)), kappa = Gamma / 2 v_g.

    Its time profile is a rising exponential exp(Gamma t / 2) cut off when the
    front reaches the first atom: the time reverse of single-atom emission.

    Args:
        pulse: Pulse specification with shape inversion
        gamma: Waveguide decay rate Gamma
        v_g: Group velocity

    Returns:
        Square-normalized SpectralAmplitude
    """
    if pulse.shape != PulseShape.INVERSION:
        raise ValidationError(f"inversion_spectrum needs shape inversion, got {pulse.shape.value}")
    if gamma <= 0:
        raise ValidationError("inversion pulse needs a positive coupling")
    kappa = gamma / (2.0 * v_g)
    center = pulse.center_detuning * pulse.width
    norm = np.sqrt(kappa / np.pi)

    def phi(delta_k: np.ndarray) -> np.ndarray:
        return norm / (kappa + 1j * (delta_k - center))

    return SpectralAmplitude(PulseShape.INVERSION, center, kappa, phi)


def spectral_amplitude(scenario: ValidatedScenario) -> SpectralAmplitude:
    """Untranslated spectral amplitude for the scenario's pulse shape"""
    if scenario.pulse.shape == PulseShape.GAUSSIAN:
        return gaussian_spectrum(scenario.pulse)
    return inversion_spectrum(scenario.pulse, scenario.gamma, scenario.v_g)


def input_spectrum(scenario: ValidatedScenario, delta_k=None) -> np.ndarray:
    """
    Input spectrum phi(dk) exp(-i (k_a + dk) x_0) with x_0 = r_1 - d_0.

    Args:
        scenario: Validated scenario
        delta_k: Detunings (default: scenario grid samples)

    Returns:
        Complex amplitudes
    """
    if delta_k is None:
        delta_k = scenario.grid.samples
    delta_k = np.asarray(delta_k, dtype=float)
    phi = spectral_amplitude(scenario)(delta_k)
    return phi * np.exp(-1j * (scenario.k_a + delta_k) * scenario.pulse_origin)


def drive_term(scenario: ValidatedScenario, j: int, t, method: str = "closed") -> np.ndarray:
    """
    Drive b_j(t) = -i sqrt(Gamma v_g / 4 pi) int phi(dk) e^{i (k_a + dk) r_j - i dk v_g t} ddk.

    Args:
        scenario: Validated scenario
        j: Atom index (0-based)
        t: Time or array of times (t >= 0)
        method: "closed" (analytic integral) or "quadrature" (trapezoid on the k-grid)

    Returns:
        Complex drive values with the shape of t

    Raises:
        ValidationError: On a bad atom index or method
        QuadratureError: If the k-grid does not contain the pulse spectrum
    """
    if not 0 <= j < scenario.n_atoms:
        raise ValidationError(f"atom index {j} out of range for {scenario.n_atoms} atoms")
    t = np.asarray(t, dtype=float)
    if method == "closed":
        return _closed_form_drive(scenario, float(scenario.positions[j]), t)
    if method == "quadrature":
        return _quadrature_drive(scenario, float(scenario.positions[j]), t)
    raise ValidationError(f"unknown drive method '{method}'")


def drive_table(scenario: ValidatedScenario, times: np.ndarray) -> np.ndarray:
    """Closed-form drive for every atom, shape (len(times), n_atoms)"""
    times = np.asarray(times, dtype=float)
    table = np.empty((times.size, scenario.n_atoms), dtype=complex)
    for j, r_j in enumerate(scenario.positions):
        table[:, j] = _closed_form_drive(scenario, float(r_j), times)
    return table


def _closed_form_drive(scenario: ValidatedScenario, r_j: float, t: np.ndarray) -> np.ndarray:
    if scenario.gamma == 0:
        return np.zeros_like(t, dtype=complex)
    x_0 = scenario.pulse_origin
    # s: distance between the atom and the pulse reference point at time t
    s = r_j - x_0 - scenario.v_g * t
    carrier = np.exp(1j * scenario.k_a * (r_j - x_0) + 1j * scenario.center * s)
    if scenario.pulse.shape == PulseShape.GAUSSIAN:
        amplitude = (8.0 * np.pi) ** -0.25 * np.sqrt(scenario.gamma * scenario.v_g * scenario.delta)
        return -1j * amplitude * carrier * np.exp(-(scenario.delta * s) ** 2 / 4.0)
    kappa = scenario.gamma / (2.0 * scenario.v_g)
    envelope = np.where(s > 0, np.exp(-kappa * np.abs(s)), np.where(s == 0, 0.5, 0.0))
    amplitude = np.sqrt(scenario.gamma * scenario.v_g / (4.0 * np.pi)) * np.sqrt(kappa / np.pi) * 2.0 * np.pi
    return -1j * amplitude * carrier * envelope


def _quadrature_drive(scenario: ValidatedScenario, r_j: float, t: np.ndarray) -> np.ndarray:
    delta_k = scenario.grid.samples
    phi = input_spectrum(scenario, delta_k)
    edge = max(abs(phi[0]), abs(phi[-1]))
    if edge > QUADRATURE_BOUNDARY_TOLERANCE * np.abs(phi).max():
        raise QuadratureError(
            f"drive quadrature not converged: boundary amplitude {edge:.2e} "
            f"exceeds {QUADRATURE_BOUNDARY_TOLERANCE:g} of peak; widen grid.extent"
        )
    prefactor = -1j * np.sqrt(scenario.gamma * scenario.v_g / (4.0 * np.pi))
    weights = scenario.grid.weights() * phi * np.exp(1j * (scenario.k_a + delta_k) * r_j)
    flat = t.reshape(-1)
    phases = np.exp(-1j * np.outer(flat, delta_k) * scenario.v_g)
    return (prefactor * (phases @ weights)).reshape(t.shape)
