"""
Single-atom analytic oracle for Gaussian excitation.

alpha(t) = integral_0^t b(t') exp(-(Gamma_t/2)(t - t')) dt' has a closed form
in complex error functions. With A = Gamma_t/2 - i delta_0 v_g,
B = (Delta v_g)^2 / 4, c = A / 2B and t_0 = d_0 / v_g:

    alpha(t) = K sqrt(pi) / (2 sqrt(B)) * exp(X) [erf(z2) - erf(z1)]
    X  = A^2 / 4B + (Gamma_t / 2)(t_0 - t)
    z1 = sqrt(B)(-t_0 - c),  z2 = sqrt(B)(t - t_0 - c)

where K is the drive amplitude at the atom. Gamma_t = Gamma + gamma; free-space
decay is supported but experimental.
"""

import logging

import numpy as np

from src.core.errors import ValidationError
from src.core.model import PulseShape
from src.core.validation import ValidatedScenario
from src.time_domain.special import scaled_erf_difference

logger = logging.getLogger(__name__)


def single_atom_analytic(scenario: ValidatedScenario, t) -> np.ndarray:
    """
    Closed-form alpha(t) for one atom driven by a Gaussian pulse.

    Args:
        scenario: One-atom Gaussian scenario
        t: Time or array of times

    Returns:
        Complex amplitudes with the shape of t

    Raises:
        ValidationError: If the scenario has more than one atom or a non-Gaussian pulse
    """
    if scenario.n_atoms != 1:
        raise ValidationError(f"single_atom_analytic needs n_atoms = 1, got {scenario.n_atoms}")
    if scenario.pulse.shape != PulseShape.GAUSSIAN:
        raise ValidationError("single_atom_analytic needs a gaussian pulse")
    if scenario.gamma_free > 0:
        logger.warning("single_atom_analytic with gamma_free > 0 is experimental")

    t = np.asarray(t, dtype=float)
    if scenario.gamma == 0:
        return np.zeros_like(t, dtype=complex)

    v_g = scenario.v_g
    gamma_total = scenario.gamma + scenario.gamma_free
    t_0 = scenario.arrival_time
    a_coef = gamma_total / 2.0 - 1j * scenario.center * v_g
    b_coef = (scenario.delta * v_g) ** 2 / 4.0
    root_b = np.sqrt(b_coef)
    c = a_coef / (2.0 * b_coef)

    z1 = root_b * (-t_0 - c)
    z2 = root_b * (t - t_0 - c)
    log_scale = a_coef**2 / (4.0 * b_coef) + (gamma_total / 2.0) * (t_0 - t)

    drive = (
        -1j
        * (8.0 * np.pi) ** -0.25
        * np.sqrt(scenario.gamma * v_g * scenario.delta)
        * np.exp(1j * scenario.k_a * scenario.offset)
    )
    return drive * np.sqrt(np.pi) / (2.0 * root_b) * scaled_erf_difference(z1, z2, log_scale)
