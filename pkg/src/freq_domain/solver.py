"""
Stationary spectral solver - M(dk) chi(dk) = b(dk) on the whole k-grid

Features:
- Drive vector b_j(dk) = -i sqrt(pi Gamma / v_g) phi(dk) e^{i k r_j}
- Batched dense LU (partial pivoting) over every grid point
- Condition-number guard with optional gamma regularization
- Per-point relative residual check
- Outgoing right/left spectra and a one-call pipeline

Usage:
    from src.freq_domain.solver import solve_spectra

    spectra = solve_spectra(scenario)
    print(spectra.grid.integrate(spectra.reflected_density))
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from src.core.errors import SingularSystemError, ValidationError
from src.core.model import KGrid, SpectralSolution
from src.core.validation import ValidatedScenario
from src.coupling.matrix import CONDITION_LIMIT, build_m
from src.pulse.spectra import input_spectrum

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DriveVector:
    """b_j(dk), shape (n_k, n_atoms)"""
    values: np.ndarray


def drive_vector(scenario: ValidatedScenario, grid: Optional[KGrid] = None) -> DriveVector:
    """Frequency-domain drive on the grid"""
    grid = grid or scenario.grid
    delta_k = grid.samples
    phi = input_spectrum(scenario, delta_k)
    k = scenario.k_a + delta_k
    phases = np.exp(1j * np.outer(k, scenario.positions))
    prefactor = -1j * np.sqrt(np.pi * scenario.gamma / scenario.v_g)
    return DriveVector(values=prefactor * phi[:, None] * phases)


def solve_chi(scenario: ValidatedScenario, grid: Optional[KGrid] = None) -> SpectralSolution:
    """
    Solve M(dk) chi = b(dk) at every grid point.

    Args:
        scenario: Validated scenario
        grid: k-grid (default: scenario grid)

    Returns:
        SpectralSolution with phi, chi and residual populated

    Raises:
        SingularSystemError: If M is near-singular and system.regularize is off
    """
    grid = grid or scenario.grid
    delta_k = grid.samples
    system = build_m(scenario, delta_k)
    warnings = []
    if system.near_singular:
        worst = int(np.argmax(system.condition))
        where = delta_k[worst] / scenario.delta
        if not scenario.config.regularize:
            raise SingularSystemError(
                f"M is near-singular at dk={where:.4g} Delta "
                f"(condition {system.condition[worst]:.2e} > {CONDITION_LIMIT:.0e}); "
                f"set system.regularize to add 1e-12 Gamma to gamma"
            )
        msg = f"regularized near-singular M at dk={where:.4g} Delta"
        logger.warning(msg)
        warnings.append(msg)
        system = build_m(scenario, delta_k, regularize=True)

    drive = drive_vector(scenario, grid).values
    chi = np.linalg.solve(system.entries, drive[..., None])[..., 0]

    residual = _relative_residual(system.entries, chi, drive)
    if residual > RESIDUAL_TOLERANCE:
        msg = f"linear solve residual {residual:.2e} exceeds {RESIDUAL_TOLERANCE:g}"
        logger.warning(msg)
        warnings.append(msg)

    logger.debug(f"Solved chi for {scenario.n_atoms} atom(s) on {grid.points} k-points, residual={residual:.2e}")
    return SpectralSolution(
        grid=grid,
        phi=input_spectrum(scenario, delta_k),
        chi=chi,
        residual=residual,
        warnings=tuple(warnings),
    )


def _relative_residual(matrices: np.ndarray, chi: np.ndarray, drive: np.ndarray) -> float:
    scale = np.linalg.norm(drive, axis=-1)
    if not np.any(scale > 0):
        return 0.0
    error = np.linalg.norm(np.einsum("kij,kj->ki", matrices, chi) - drive, axis=-1)
    mask = scale > 0
    return float(np.max(error[mask] / scale[mask]))


def outgoing_spectra(scenario: ValidatedScenario, solution: SpectralSolution) -> SpectralSolution:
    """
    Right- and left-moving outgoing spectra from chi.

    phi_R = phi - i sqrt(Gamma v_g / 4 pi) sum_j e^{-i k r_j} chi_j
    phi_L =     - i sqrt(Gamma v_g / 4 pi) sum_j e^{+i k r_j} chi_j
    """
    if solution.chi is None:
        raise ValidationError("chi not populated; run solve_chi first")
    k = scenario.k_a + solution.grid.samples
    phases = np.exp(1j * np.outer(k, scenario.positions))
    prefactor = -1j * np.sqrt(scenario.gamma * scenario.v_g / (4.0 * np.pi))
    beta_r = solution.phi + prefactor * np.sum(np.conj(phases) * solution.chi, axis=1)
    beta_l = prefactor * np.sum(phases * solution.chi, axis=1)
    return replace(solution, beta_r=beta_r, beta_l=beta_l)


def solve_spectra(scenario: ValidatedScenario, grid: Optional[KGrid] = None) -> SpectralSolution:
    """solve_chi followed by outgoing_spectra"""
    solution = outgoing_spectra(scenario, solve_chi(scenario, grid))
    logger.info(
        f"Frequency-domain spectra: n_atoms={scenario.n_atoms}, eta={scenario.eta}, "
        f"spacing={scenario.spacing}, points={solution.grid.points}"
    )
    return solution
