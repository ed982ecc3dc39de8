"""
Figure presets - bundled scenarios that regenerate every reference dataset

Features:
- One FigurePreset per figure id (2a..2f, 3a..3i, 4a..4c, 5, 6a..6i, 7a, 7b, 8a..8c)
- Each preset is a list of panels; a panel is a scenario document plus the
  command that consumes it (dynamics, spectrum, scan, bandwidth)
- Scenario documents go through the same strict schema as user files

Usage:
    from src.cli.figures import figure_preset

    preset = figure_preset("3f")
    for panel in preset.panels:
        print(panel.name, panel.kind.value)
"""

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import ValidationError
from src.observables.scan import ScanAxis


class PanelKind(str, Enum):
    DYNAMICS = "dynamics"
    SPECTRUM = "spectrum"
    SCAN = "scan"
    BANDWIDTH = "bandwidth"  # coupling scan with relative reflected FWHM


@dataclass(frozen=True)
class Panel:
    """One dataset of a figure"""
    name: str
    kind: PanelKind
    scenario: Dict[str, Any]
    axis: Optional[ScanAxis] = None
    values: Tuple[float, ...] = ()


@dataclass(frozen=True)
class FigurePreset:
    figure_id: str
    description: str
    panels: Tuple[Panel, ...]

    def scenario_hash(self) -> str:
        """SHA-256 over the canonical JSON of every panel"""
        data = [
            {
                "name": panel.name,
                "kind": panel.kind.value,
                "scenario": panel.scenario,
                "axis": panel.axis.value if panel.axis else None,
                "values": list(panel.values),
            }
            for panel in self.panels
        ]
        data_str = json.dumps(data, sort_keys=True)
        return hashlib.sha256(data_str.encode()).hexdigest()


LAMBDA_2 = 0.5
LAMBDA_4 = 0.25
LAMBDA_8 = 0.125
LAMBDA_3_8 = 0.375
FOUR_SPACINGS = (LAMBDA_8, LAMBDA_4, LAMBDA_3_8, LAMBDA_2)

# Pulse-shape snapshots in units of 1/Gamma: before and after scattering
SNAPSHOTS = (0.0, 30.0)

DETUNING_VALUES = tuple(float(v) for v in np.linspace(-4.0, 4.0, 81))
SPACING_VALUES = tuple(float(v) for v in np.linspace(0.05, 1.0, 96))
COUPLING_VALUES = tuple(float(v) for v in np.linspace(0.1, 5.0, 50))
ATOM_NUMBERS = tuple(float(n) for n in range(1, 11))


def _scenario(
    n_atoms: int = 1,
    spacing: float = LAMBDA_2,
    eta: float = 1.0,
    gamma_free: float = 0.0,
    shape: str = "gaussian",
    center_detuning: float = 0.0,
    pulse_times: Sequence[float] = (),
) -> Dict[str, Any]:
    """Scenario document with the captions' shared defaults"""
    return {
        "system": {"n_atoms": n_atoms, "spacing": spacing, "eta": eta, "gamma_free": gamma_free},
        "pulse": {"shape": shape, "width": 0.02, "center_detuning": center_detuning},
        "output": {"pulse_times": list(pulse_times)},
    }


def _label(spacing: float) -> str:
    return {
        LAMBDA_8: "a_lambda_8",
        LAMBDA_4: "a_lambda_4",
        LAMBDA_3_8: "a_3lambda_8",
        LAMBDA_2: "a_lambda_2",
    }[spacing]


def _chain(prefix: str, n_atoms: int, spacings: Sequence[float], letters: str) -> Dict[str, FigurePreset]:
    """Three panels per spacing: dynamics, pulse shapes, spectra"""
    presets: Dict[str, FigurePreset] = {}
    letters_iter = iter(letters)
    for spacing in spacings:
        dynamics, shapes, spectra = next(letters_iter), next(letters_iter), next(letters_iter)
        base = _scenario(n_atoms=n_atoms, spacing=spacing)
        label = _label(spacing)
        presets[f"{prefix}{dynamics}"] = FigurePreset(
            f"{prefix}{dynamics}",
            f"{n_atoms}-atom excitation dynamics, {label}",
            (Panel(label, PanelKind.DYNAMICS, base),),
        )
        presets[f"{prefix}{shapes}"] = FigurePreset(
            f"{prefix}{shapes}",
            f"{n_atoms}-atom pulse shapes before and after scattering, {label}",
            (Panel(label, PanelKind.SPECTRUM, _scenario(n_atoms=n_atoms, spacing=spacing, pulse_times=SNAPSHOTS)),),
        )
        presets[f"{prefix}{spectra}"] = FigurePreset(
            f"{prefix}{spectra}",
            f"{n_atoms}-atom spectra, {label}",
            (Panel(label, PanelKind.SPECTRUM, base),),
        )
    return presets


def _build_presets() -> Dict[str, FigurePreset]:
    presets: Dict[str, FigurePreset] = {}

    # Single atom
    presets["2a"] = FigurePreset(
        "2a",
        "single-atom excitation for Gaussian and inversion pulses, eta = 1",
        (
            Panel("gaussian", PanelKind.DYNAMICS, _scenario()),
            Panel("inversion", PanelKind.DYNAMICS, _scenario(shape="inversion")),
        ),
    )
    presets["2b"] = FigurePreset("2b", "single-atom spectra, eta = 1", (Panel("resonant", PanelKind.SPECTRUM, _scenario()),))
    presets["2c"] = FigurePreset(
        "2c",
        "single-atom pulse shapes before and after scattering",
        (Panel("resonant", PanelKind.SPECTRUM, _scenario(pulse_times=SNAPSHOTS)),),
    )
    presets["2d"] = FigurePreset(
        "2d",
        "reflectivity, transmittivity and relative reflected FWHM versus eta",
        (Panel("coupling", PanelKind.BANDWIDTH, _scenario(), ScanAxis.COUPLING, COUPLING_VALUES),),
    )
    presets["2e"] = FigurePreset(
        "2e",
        "single-atom spectra at k_0 - k_a = Delta / 2",
        (Panel("detuned", PanelKind.SPECTRUM, _scenario(center_detuning=0.5)),),
    )
    presets["2f"] = FigurePreset(
        "2f",
        "single-atom reflectivity versus center detuning",
        (Panel("detuning", PanelKind.SCAN, _scenario(), ScanAxis.DETUNING, DETUNING_VALUES),),
    )

    # Two atoms
    presets.update(_chain("3", 2, (LAMBDA_2, LAMBDA_4, LAMBDA_8), "abcdefghi"))
    # lambda/8 has no pulse-shape panel; 3i is the mirrored 3 lambda/8 spectrum
    presets["3h"] = FigurePreset(
        "3h", "2-atom spectra, a_lambda_8", (Panel("a_lambda_8", PanelKind.SPECTRUM, _scenario(n_atoms=2, spacing=LAMBDA_8)),)
    )
    presets["3i"] = FigurePreset(
        "3i",
        "2-atom spectra, a_3lambda_8",
        (Panel("a_3lambda_8", PanelKind.SPECTRUM, _scenario(n_atoms=2, spacing=LAMBDA_3_8)),),
    )
    presets["4a"] = FigurePreset(
        "4a",
        "2-atom reflectivity versus spacing for eta = 0.5, 1, 2",
        tuple(
            Panel(f"eta_{eta:g}".replace(".", "p"), PanelKind.SCAN, _scenario(n_atoms=2, eta=eta), ScanAxis.SPACING, SPACING_VALUES)
            for eta in (0.5, 1.0, 2.0)
        ),
    )
    presets["4b"] = FigurePreset(
        "4b",
        "2-atom reflectivity versus center detuning at four spacings",
        tuple(
            Panel(_label(a), PanelKind.SCAN, _scenario(n_atoms=2, spacing=a), ScanAxis.DETUNING, DETUNING_VALUES)
            for a in FOUR_SPACINGS
        ),
    )
    presets["4c"] = FigurePreset(
        "4c",
        "2-atom reflectivity versus eta at three spacings",
        tuple(
            Panel(_label(a), PanelKind.SCAN, _scenario(n_atoms=2, spacing=a), ScanAxis.COUPLING, COUPLING_VALUES)
            for a in (LAMBDA_2, LAMBDA_4, LAMBDA_8)
        ),
    )
    presets["5"] = FigurePreset(
        "5",
        "2-atom concurrence at three spacings",
        tuple(Panel(_label(a), PanelKind.DYNAMICS, _scenario(n_atoms=2, spacing=a)) for a in (LAMBDA_2, LAMBDA_4, LAMBDA_8)),
    )

    # Five atoms
    presets.update(_chain("6", 5, (LAMBDA_2, LAMBDA_4, LAMBDA_8), "abcdefghi"))
    presets["7a"] = FigurePreset(
        "7a",
        "5-atom reflectivity versus center detuning at four spacings",
        tuple(
            Panel(_label(a), PanelKind.SCAN, _scenario(n_atoms=5, spacing=a), ScanAxis.DETUNING, DETUNING_VALUES)
            for a in FOUR_SPACINGS
        ),
    )
    presets["7b"] = FigurePreset(
        "7b",
        "reflectivity versus atom number at a = lambda/2 and lambda/4",
        tuple(
            Panel(_label(a), PanelKind.SCAN, _scenario(spacing=a), ScanAxis.N_ATOMS, ATOM_NUMBERS)
            for a in (LAMBDA_2, LAMBDA_4)
        ),
    )

    # Free-space decay, a = lambda/4
    presets["8a"] = FigurePreset(
        "8a",
        "2-atom spectra with gamma = Gamma/5",
        (Panel("gamma_0p2", PanelKind.SPECTRUM, _scenario(n_atoms=2, spacing=LAMBDA_4, gamma_free=0.2)),),
    )
    presets["8b"] = FigurePreset(
        "8b",
        "2-atom spectra with gamma = Gamma",
        (Panel("gamma_1", PanelKind.SPECTRUM, _scenario(n_atoms=2, spacing=LAMBDA_4, gamma_free=1.0)),),
    )
    presets["8c"] = FigurePreset(
        "8c",
        "5-atom spectra with gamma = Gamma",
        (Panel("gamma_1", PanelKind.SPECTRUM, _scenario(n_atoms=5, spacing=LAMBDA_4, gamma_free=1.0)),),
    )
    return presets


FIGURE_PRESETS: Dict[str, FigurePreset] = _build_presets()


def figure_preset(figure_id: str) -> FigurePreset:
    """
    Look up a preset by id.

    Raises:
        ValidationError: If the id is unknown
    """
    key = str(figure_id).strip().lower()
    if key not in FIGURE_PRESETS:
        raise ValidationError(f"unknown figure id {figure_id!r}; choose from {', '.join(sorted(FIGURE_PRESETS))}")
    return FIGURE_PRESETS[key]
