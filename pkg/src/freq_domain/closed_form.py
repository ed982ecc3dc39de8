"""
Closed-form outgoing spectra for one and two atoms.

With u = 1 - 2i dk v_g / Gamma, e2 = exp(2 i k a), P = Gamma + gamma - 2i dk v_g
and phi the (translated) input spectrum:

    one_atom        phi_R = phi (-2i dk v_g / Gamma) / u
                    phi_L = -e^{2 i k r_1} phi / u
    two_atom        phi_R = phi (-4 dk^2 v_g^2 / Gamma^2) / (u^2 - e2)
                    phi_L = -e^{2 i k r_1} phi [(1 + e2) u - 2 e2] / (u^2 - e2)
    two_atom_decay  phi_R = phi (gamma^2 - 4i dk v_g gamma - 4 dk^2 v_g^2) / (P^2 - Gamma^2 e2)
                    phi_L = -Gamma e^{2 i k r_1} phi [(1 + e2) P - 2 Gamma e2] / (P^2 - Gamma^2 e2)

The commonly printed two-atom left spectra omit the leading minus sign and,
with decay, the factor Gamma; as_printed=True reproduces those expressions.
"""

import logging
from enum import Enum
from typing import Tuple

import numpy as np

from src.core.errors import ValidationError
from src.core.validation import ValidatedScenario
from src.pulse.spectra import input_spectrum

logger = logging.getLogger(__name__)


class ClosedFormVariant(str, Enum):
    ONE_ATOM = "one_atom"
    TWO_ATOM = "two_atom"
    TWO_ATOM_DECAY = "two_atom_decay"


_REQUIRED_ATOMS = {
    ClosedFormVariant.ONE_ATOM: 1,
    ClosedFormVariant.TWO_ATOM: 2,
    ClosedFormVariant.TWO_ATOM_DECAY: 2,
}


def closed_form_spectra(
    variant: ClosedFormVariant,
    scenario: ValidatedScenario,
    delta_k=None,
    as_printed: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate the closed-form outgoing spectra.

    Args:
        variant: Which closed form
        scenario: Scenario with the matching atom count
        delta_k: Detunings (default: scenario grid samples)
        as_printed: Use the printed two-atom left-spectrum expressions

    Returns:
        (beta_r, beta_l)

    Raises:
        ValidationError: If the scenario does not match the variant
    """
    variant = ClosedFormVariant(variant)
    required = _REQUIRED_ATOMS[variant]
    if scenario.n_atoms != required:
        raise ValidationError(
            f"closed form {variant.value} needs n_atoms = {required}, got {scenario.n_atoms}"
        )
    if variant != ClosedFormVariant.TWO_ATOM_DECAY and scenario.gamma_free > 0:
        raise ValidationError(f"closed form {variant.value} has no free-space decay; use two_atom_decay")
    if scenario.gamma <= 0:
        raise ValidationError("closed forms need eta > 0")

    if delta_k is None:
        delta_k = scenario.grid.samples
    delta_k = np.asarray(delta_k, dtype=float)
    phi = input_spectrum(scenario, delta_k)
    gamma = scenario.gamma
    detuning = delta_k * scenario.v_g
    k = scenario.k_a + delta_k
    mirror = np.exp(2j * k * float(scenario.positions[0]))

    if variant == ClosedFormVariant.ONE_ATOM:
        u = 1.0 - 2j * detuning / gamma
        return phi * (-2j * detuning / gamma) / u, -mirror * phi / u

    e2 = np.exp(2j * k * scenario.spacing)
    if variant == ClosedFormVariant.TWO_ATOM:
        u = 1.0 - 2j * detuning / gamma
        denominator = u**2 - e2
        beta_r = phi * (-4.0 * detuning**2 / gamma**2) / denominator
        beta_l = mirror * phi * ((1.0 + e2) * u - 2.0 * e2) / denominator
        return beta_r, beta_l if as_printed else -beta_l

    gamma_free = scenario.gamma_free
    p = gamma + gamma_free - 2j * detuning
    denominator = p**2 - gamma**2 * e2
    beta_r = phi * (gamma_free**2 - 4j * detuning * gamma_free - 4.0 * detuning**2) / denominator
    bracket = mirror * phi * ((1.0 + e2) * p - 2.0 * gamma * e2) / denominator
    return beta_r, bracket if as_printed else -gamma * bracket
