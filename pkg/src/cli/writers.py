"""
Deterministic CSV output.

Every file starts with one '#' metadata line (scenario hash, tool, version),
then a snake_case header, then rows with floats formatted as %.12e. Identical
inputs give byte-identical files.
"""

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from src.core.model import (
    AmplitudeTrajectory,
    ConcurrenceTrajectory,
    FeatureKind,
    SpectralSolution,
    TransportSummary,
)
from src.observables.features import select
from src.observables.pulse_shape import PulseProfile
from src.observables.scan import ScanRow, ScanTable

logger = logging.getLogger(__name__)

TOOL_NAME = "wgqed"
TOOL_VERSION = "1.0.0"
FLOAT_FORMAT = "%.12e"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % float(value)
    return str(value)


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    scenario_hash: Optional[str] = None,
) -> Path:
    """
    Write a CSV with the metadata line.

    Args:
        path: Output file
        columns: Header names
        rows: Row values (floats, ints, strings or None)
        scenario_hash: Hash recorded in the metadata line

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# scenario_hash={scenario_hash or 'none'} tool={TOOL_NAME} version={TOOL_VERSION}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    logger.debug(f"Wrote {path}")
    return path


def write_trajectory(path: Path, trajectory: AmplitudeTrajectory, scenario_hash: Optional[str] = None) -> Path:
    """t, then |alpha_j|^2, re/im alpha_j per atom"""
    columns: List[str] = ["t"]
    for j in range(1, trajectory.n_atoms + 1):
        columns += [f"abs2_alpha_{j}", f"re_alpha_{j}", f"im_alpha_{j}"]
    probabilities = trajectory.probabilities
    amplitudes = trajectory.amplitudes

    def rows():
        for i, t in enumerate(trajectory.times):
            row = [t]
            for j in range(trajectory.n_atoms):
                row += [probabilities[i, j], amplitudes[i, j].real, amplitudes[i, j].imag]
            yield row

    return write_csv(path, columns, rows(), scenario_hash)


def write_concurrence(path: Path, concurrence: ConcurrenceTrajectory, scenario_hash: Optional[str] = None) -> Path:
    return write_csv(path, ["t", "concurrence"], zip(concurrence.times, concurrence.values), scenario_hash)


def write_spectrum(path: Path, spectra: SpectralSolution, scenario_hash: Optional[str] = None) -> Path:
    """Detuning in units of Delta and the four densities"""
    x = spectra.grid.samples / spectra.grid.width
    rows = zip(
        x,
        spectra.input_density,
        spectra.reflected_density,
        spectra.transmitted_density,
        spectra.guided_density,
    )
    return write_csv(
        path,
        ["dk_over_delta", "input_density", "reflected_density", "transmitted_density", "guided_density"],
        rows,
        scenario_hash,
    )


def write_summary(path: Path, summary: TransportSummary, scenario_hash: Optional[str] = None) -> Path:
    """One quantity per row: R, T, guided fraction, then every feature"""
    rows: List[Sequence] = [
        ["reflectivity", "", summary.reflectivity, "", ""],
        ["transmittivity", "", summary.transmittivity, "", ""],
        ["guided_fraction", "", summary.guided_fraction, "", ""],
    ]
    for feature in summary.features:
        rows.append([feature.kind.value, feature.channel, feature.location, feature.width, feature.value])
    return write_csv(path, ["quantity", "channel", "value", "width", "density"], rows, scenario_hash)


def write_pulse_shapes(path: Path, profiles: Sequence[PulseProfile], scenario_hash: Optional[str] = None) -> Path:
    """Stacked snapshots, one block of rows per time"""

    def rows():
        for profile in profiles:
            for row in zip(profile.x, profile.incoming_density, profile.right_density, profile.left_density):
                yield (profile.time, *row)

    return write_csv(path, ["t", "x", "abs2_beta_in", "abs2_beta_r", "abs2_beta_l"], rows(), scenario_hash)


def write_scan(path: Path, table: ScanTable, scenario_hash: Optional[str] = None) -> Path:
    rows = (
        [row.value, row.reflectivity, row.transmittivity, row.guided_fraction, row.error]
        for row in table.rows
    )
    return write_csv(
        path,
        ["axis_value", "reflectivity", "transmittivity", "guided_fraction", "error"],
        rows,
        scenario_hash,
    )


def write_bandwidth(path: Path, table: ScanTable, scenario_hash: Optional[str] = None) -> Path:
    """Coupling scan with the reflected FWHM relative to the input FWHM"""
    rows = (
        [row.value, row.reflectivity, row.transmittivity, relative_reflected_width(row)]
        for row in table.rows
    )
    return write_csv(
        path,
        ["eta", "reflectivity", "transmittivity", "relative_reflected_fwhm"],
        rows,
        scenario_hash,
    )


def relative_reflected_width(row: ScanRow) -> float:
    """FWHM of the reflected density over that of the input density (nan if either is missing)"""
    reflected = select(row.features, FeatureKind.FWHM, "reflected")
    incoming = select(row.features, FeatureKind.FWHM, "input")
    if not reflected or not incoming or not incoming[0].width:
        return float("nan")
    return float(reflected[0].width / incoming[0].width)
