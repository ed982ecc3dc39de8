"""
Finite-time photon spectra from an integrated trajectory

    phi_R(dk, t) = phi(dk) - i sqrt(Gamma v_g / 4 pi) sum_j e^{-i k r_j} I_j(dk, t)
    phi_L(dk, t) =         - i sqrt(Gamma v_g / 4 pi) sum_j e^{+i k r_j} I_j(dk, t)
    I_j(dk, t)   = integral_0^t alpha_j(t') e^{i dk v_g t'} dt'

Features:
- Simpson quadrature in time, chunked over the k-grid to bound memory
- Convergence warning when the atoms still hold excitation at t
- Norm-balance diagnostic (atomic + photonic probability)

Usage:
    from src.time_domain.spectra import finite_time_spectra, norm_balance

    spectra = finite_time_spectra(scenario, trajectory)
    print(norm_balance(scenario, trajectory, trajectory.times[-1]))
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from src.core.errors import ValidationError
from src.core.model import AmplitudeTrajectory, KGrid, SpectralSolution
from src.core.validation import ValidatedScenario
from src.pulse.spectra import input_spectrum

logger = logging.getLogger(__name__)

UNDECAYED_TOLERANCE = 1e-4
K_CHUNK = 64


def finite_time_spectra(
    scenario: ValidatedScenario,
    trajectory: AmplitudeTrajectory,
    t: Optional[float] = None,
    grid: Optional[KGrid] = None,
) -> SpectralSolution:
    """
    Outgoing spectra at time t by time quadrature of the trajectory.

    Args:
        scenario: Scenario the trajectory was integrated for
        trajectory: Integrated amplitudes covering [0, t]
        t: Evaluation time (default: end of the trajectory); rounded down to the time grid
        grid: k-grid (default: scenario grid)

    Returns:
        SpectralSolution with beta_r, beta_l populated and time set

    Raises:
        ValidationError: If t lies outside the trajectory
    """
    grid = grid or scenario.grid
    times = trajectory.times
    step = trajectory.step
    if t is None:
        t = float(times[-1])
    if t < 0 or t > times[-1] + 1e-9 * step:
        raise ValidationError(f"time {t} outside trajectory [0, {times[-1]}]")
    last = min(int(math.floor(t / step + 1e-9)), times.size - 1)

    delta_k = grid.samples
    phi = input_spectrum(scenario, delta_k)
    integrals = _time_integrals(trajectory, last, delta_k * scenario.v_g)

    k = scenario.k_a + delta_k
    phases = np.exp(1j * np.outer(k, scenario.positions))
    prefactor = -1j * np.sqrt(scenario.gamma * scenario.v_g / (4.0 * np.pi))
    beta_r = phi + prefactor * np.sum(np.conj(phases) * integrals, axis=1)
    beta_l = prefactor * np.sum(phases * integrals, axis=1)

    warnings = []
    remaining = float(np.sum(np.abs(trajectory.amplitudes[last]) ** 2))
    if remaining > UNDECAYED_TOLERANCE:
        msg = f"spectra not converged: sum |alpha|^2 = {remaining:.3e} at t={times[last]:.4g}"
        logger.warning(msg)
        warnings.append(msg)

    logger.debug(f"Finite-time spectra at t={times[last]:.4g} on {grid.points} k-points")
    return SpectralSolution(
        grid=grid,
        phi=phi,
        beta_r=beta_r,
        beta_l=beta_l,
        time=float(times[last]),
        warnings=tuple(warnings),
    )


def _time_integrals(trajectory: AmplitudeTrajectory, last: int, frequencies: np.ndarray) -> np.ndarray:
    """I_j(w) = integral alpha_j(t) e^{i w t} dt over samples 0..last, shape (n_k, n_atoms)"""
    n_atoms = trajectory.n_atoms
    integrals = np.zeros((frequencies.size, n_atoms), dtype=complex)
    if last == 0:
        return integrals
    times = trajectory.times[:last + 1]
    alphas = trajectory.amplitudes[:last + 1]
    for start in range(0, frequencies.size, K_CHUNK):
        block = frequencies[start:start + K_CHUNK]
        kernel = np.exp(1j * np.outer(block, times))
        for j in range(n_atoms):
            integrals[start:start + K_CHUNK, j] = simpson(kernel * alphas[:, j], dx=trajectory.step, axis=1)
    return integrals


def norm_balance(
    scenario: ValidatedScenario,
    trajectory: AmplitudeTrajectory,
    t: float,
    grid: Optional[KGrid] = None,
) -> float:
    """
    Total probability at time t: sum_j |alpha_j(t)|^2 + integral (|phi_R|^2 + |phi_L|^2) ddk.

    Equals 1 for gamma = 0 up to quadrature error.
    """
    spectra = finite_time_spectra(scenario, trajectory, t, grid)
    index = min(int(math.floor(t / trajectory.step + 1e-9)), trajectory.times.size - 1)
    atomic = float(np.sum(np.abs(trajectory.amplitudes[index]) ** 2))
    return atomic + spectra.grid.integrate(spectra.guided_density)
