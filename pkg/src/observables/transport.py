"""
Transport observables - reflectivity, transmittivity and single-atom formulas

Features:
- R = integral |phi_L|^2, T = integral |phi_R|^2 on the solver's own grid
- Grid-truncation warning when spectral density reaches the grid edge
- Single-atom R(eta) by quadrature under both prefactor conventions, plus
  the closed form eta sqrt(pi/2) erfcx(eta / sqrt(2))
- Single-atom transmission peak positions

Usage:
    from src.observables.transport import reflect_transmit, one_atom_rt_eta

    summary = reflect_transmit(spectra)
    print(summary.reflectivity, summary.transmittivity)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx

from src.core.errors import ValidationError
from src.core.model import SpectralFeature, SpectralSolution, TransportSummary

logger = logging.getLogger(__name__)

EDGE_TOLERANCE = 1e-6


class Prefactor(str, Enum):
    """Normalization of the single-atom reflectivity integral"""
    PRINTED = "printed"  # sqrt(pi / 2): exceeds 1 for strong coupling
    CORRECTED = "corrected"  # sqrt(2 / pi)


@dataclass(frozen=True)
class OneAtomTransport:
    """Single-atom R(eta), T(eta) under one prefactor convention"""
    eta: float
    prefactor: Prefactor
    reflectivity: float
    transmittivity: float
    closed_form: float  # eta sqrt(pi/2) erfcx(eta/sqrt(2)), corrected normalization


def reflect_transmit(
    spectra: SpectralSolution,
    features: Optional[List[SpectralFeature]] = None,
) -> TransportSummary:
    """
    Integrate reflected and transmitted densities.

    Args:
        spectra: Stationary or converged finite-time spectra
        features: Features to attach to the summary

    Returns:
        TransportSummary (warnings carry grid truncation)
    """
    reflected = spectra.reflected_density
    transmitted = spectra.transmitted_density
    reflectivity = spectra.grid.integrate(reflected)
    transmittivity = spectra.grid.integrate(transmitted)

    warnings = list(spectra.warnings)
    density = reflected + transmitted
    peak = float(density.max(initial=0.0))
    edge = float(max(density[0], density[-1]))
    if peak > 0 and edge > EDGE_TOLERANCE * peak:
        msg = (
            f"grid truncation: boundary spectral density {edge / peak:.2e} of peak; "
            f"widen grid.extent"
        )
        logger.warning(msg)
        warnings.append(msg)

    logger.info(f"R={reflectivity:.6f}, T={transmittivity:.6f}, R+T={reflectivity + transmittivity:.6f}")
    return TransportSummary(
        reflectivity=reflectivity,
        transmittivity=transmittivity,
        features=list(features or []),
        warnings=tuple(warnings),
    )


def _reflection_integral(eta: float) -> float:
    """integral over y of exp(-2 y^2) / (1 + 4 y^2 / eta^2)"""
    if eta > 1.0:
        value, _ = quad(lambda y: np.exp(-2.0 * y * y) / (1.0 + 4.0 * y * y / eta**2), -np.inf, np.inf)
        return value
    # y = (eta/2) tan(theta) maps the narrow Lorentzian onto a smooth bounded integrand
    value, _ = quad(
        lambda theta: 0.5 * eta * np.exp(-0.5 * eta**2 * np.tan(theta) ** 2),
        -np.pi / 2.0,
        np.pi / 2.0,
    )
    return value


def one_atom_rt_eta(eta: float, prefactor: Prefactor = Prefactor.CORRECTED) -> OneAtomTransport:
    """
    Single-atom reflectivity for a Gaussian pulse of coupling ratio eta.

    Args:
        eta: Gamma / (Delta v_g), must be positive
        prefactor: Integral normalization convention

    Returns:
        OneAtomTransport with T = 1 - R

    Raises:
        ValidationError: If eta <= 0
    """
    if not eta > 0:
        raise ValidationError(f"eta must be > 0, got {eta}")
    prefactor = Prefactor(prefactor)
    scale = np.sqrt(np.pi / 2.0) if prefactor == Prefactor.PRINTED else np.sqrt(2.0 / np.pi)
    reflectivity = float(scale * _reflection_integral(eta))
    closed = float(eta * np.sqrt(np.pi / 2.0) * erfcx(eta / np.sqrt(2.0)))
    return OneAtomTransport(
        eta=eta,
        prefactor=prefactor,
        reflectivity=reflectivity,
        transmittivity=1.0 - reflectivity,
        closed_form=closed,
    )


def transmission_peaks(eta: float) -> Tuple[float, float]:
    """
    Single-atom transmission peaks dk_+/- / Delta = +/-(eta / 2 sqrt 2) sqrt(-1 + sqrt(1 + 8/eta^2)).

    Returns:
        (dk_plus, dk_minus) in units of Delta
    """
    if not eta > 0:
        raise ValidationError(f"eta must be > 0, got {eta}")
    x = 8.0 / eta**2
    # sqrt(1 + x) - 1 without cancellation for large eta
    shifted = x / (1.0 + np.sqrt(1.0 + x))
    position = float(eta / (2.0 * np.sqrt(2.0)) * np.sqrt(shifted))
    return position, -position
