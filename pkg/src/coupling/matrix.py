"""
Collective coupling - waveguide-mediated interaction matrices and eigenmodes

Features:
- V_jl = -(Gamma/2) exp(i k |r_j - r_l|), complex symmetric and non-Hermitian
- M = -V + (gamma/2 - i dk v_g) I with a condition-number guard
- Batched construction over a whole k-grid
- Eigen-analysis with collective decay rates, energy shifts and
  super/subradiant labels
- Two-atom closed-form eigenvalues

Usage:
    from src.coupling.matrix import build_v, build_m, eigenmodes

    v = build_v(scenario, 0.0)
    modes = eigenmodes(scenario)
    for mode in modes:
        print(mode.value, mode.kind)
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np
import scipy.linalg

from src.core.errors import ValidationError
from src.core.validation import ValidatedScenario

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
REGULARIZATION = 1e-12  # added to gamma, in units of Gamma
RADIANCE_TOLERANCE = 1e-9

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class CouplingMatrix:
    """V at wavevector(s) k = k_a + dk; entries shape (..., N, N)"""
    entries: np.ndarray
    k: np.ndarray


@dataclass(frozen=True)
class SystemMatrix:
    """M at one or more detunings plus its conditioning"""
    entries: np.ndarray
    condition: np.ndarray
    regularized: bool = False

    @property
    def near_singular(self) -> bool:
        return bool(np.any(self.condition > CONDITION_LIMIT))


@dataclass(frozen=True)
class EigenMode:
    """Collective mode of V"""
    value: complex
    vector: np.ndarray
    gamma: float

    @property
    def decay_rate(self) -> float:
        """Population decay rate -2 Re(lambda)"""
        return -2.0 * self.value.real

    @property
    def energy_shift(self) -> float:
        return self.value.imag

    @property
    def kind(self) -> str:
        """superradiant / subradiant / single relative to one atom's Gamma"""
        if self.gamma <= 0:
            return "single"
        if self.decay_rate > self.gamma * (1.0 + RADIANCE_TOLERANCE):
            return "superradiant"
        if self.decay_rate < self.gamma * (1.0 - RADIANCE_TOLERANCE):
            return "subradiant"
        return "single"


def _separations(scenario: ValidatedScenario) -> np.ndarray:
    r = scenario.positions
    return np.abs(r[:, None] - r[None, :])


def build_v(scenario: ValidatedScenario, delta_k: ArrayLike = 0.0) -> CouplingMatrix:
    """
    Build V_jl = -(Gamma/2) exp(i k r_jl), k = k_a + dk.

    Args:
        scenario: Validated scenario
        delta_k: Detuning or array of detunings

    Returns:
        CouplingMatrix with entries shaped (*dk.shape, N, N)
    """
    k = scenario.k_a + np.asarray(delta_k, dtype=float)
    r = _separations(scenario)
    entries = -(scenario.gamma / 2.0) * np.exp(1j * k[..., None, None] * r)
    return CouplingMatrix(entries=entries, k=k)


def build_m(
    scenario: ValidatedScenario,
    delta_k: ArrayLike = 0.0,
    regularize: bool = False,
) -> SystemMatrix:
    """
    Build M = -V + (gamma/2 - i dk v_g) I.

    Args:
        scenario: Validated scenario
        delta_k: Detuning or array of detunings
        regularize: Add 1e-12 Gamma to gamma

    Returns:
        SystemMatrix with per-detuning 2-norm condition numbers
    """
    delta_k = np.asarray(delta_k, dtype=float)
    gamma_free = scenario.gamma_free
    if regularize:
        gamma_free += REGULARIZATION * scenario.gamma
    v = build_v(scenario, delta_k).entries
    diagonal = gamma_free / 2.0 - 1j * delta_k * scenario.v_g
    entries = -v + diagonal[..., None, None] * np.eye(scenario.n_atoms)
    condition = np.linalg.cond(entries)
    condition = np.where(np.isfinite(condition), condition, np.inf)
    return SystemMatrix(entries=entries, condition=condition, regularized=regularize)


def eigenmodes(scenario: ValidatedScenario, delta_k: float = 0.0) -> List[EigenMode]:
    """
    Diagonalize V(dk) with a general complex eigensolver.

    Eigenvectors are scaled to unit 2-norm with their largest component real
    and positive; modes are ordered by decay rate, fastest first.

    Args:
        scenario: Validated scenario
        delta_k: Detuning

    Returns:
        List of EigenMode
    """
    v = build_v(scenario, float(delta_k)).entries
    values, vectors = scipy.linalg.eig(v)
    modes = []
    for idx in range(values.size):
        vec = vectors[:, idx]
        vec = vec / np.linalg.norm(vec)
        pivot = vec[np.argmax(np.abs(vec))]
        vec = vec * (abs(pivot) / pivot)
        modes.append(EigenMode(value=complex(values[idx]), vector=vec, gamma=scenario.gamma))
    modes.sort(key=lambda m: (m.value.real, m.value.imag))
    logger.debug(f"Eigenmodes at dk={delta_k}: {[m.value for m in modes]}")
    return modes


def two_atom_eigenvalues(
    scenario: ValidatedScenario,
    as_printed: bool = False,
) -> Tuple[complex, complex]:
    """
    Closed-form eigenvalues of V for two atoms at dk = 0.

    lambda_+/- = -(Gamma/2)(1 +/- exp(i k_a a)) for the modes (|eg> +/- |ge>)/sqrt(2).
    The printed variant, -(Gamma/2)(1 +/- cos k_a a) +/- i (Gamma/2) sin k_a a,
    is the complex conjugate of this pair.

    Args:
        scenario: Two-atom scenario
        as_printed: Return the conjugated (printed) form

    Returns:
        (lambda_plus, lambda_minus)
    """
    if scenario.n_atoms != 2:
        raise ValidationError(f"two_atom_eigenvalues needs n_atoms = 2, got {scenario.n_atoms}")
    half = scenario.gamma / 2.0
    phase = scenario.resonance_phase
    plus = complex(-half * (1.0 + np.exp(1j * phase)))
    minus = complex(-half * (1.0 - np.exp(1j * phase)))
    if as_printed:
        return plus.conjugate(), minus.conjugate()
    return plus, minus


def two_atom_eigenvectors() -> Tuple[np.ndarray, np.ndarray]:
    """(|eg> + |ge>)/sqrt(2) and (|eg> - |ge>)/sqrt(2)"""
    root = 1.0 / np.sqrt(2.0)
    return np.array([root, root], dtype=complex), np.array([root, -root], dtype=complex)
