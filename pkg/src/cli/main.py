"""
wgqed - command-line runner for single-photon transport through atomic chains

Commands:
- dynamics: integrate the retarded equations of motion, write trajectory.csv
  (and concurrence.csv for two atoms)
- spectrum: solve the stationary spectra, write spectrum.csv, summary.csv and
  pulseshape.csv when output.pulse_times is set
- scan: frequency-domain transport over one axis, write scan.csv
- figure: regenerate the dataset(s) of a bundled figure preset
- runs: status counts and runtime percentiles from <out>/runs.jsonl

Every command appends one entry to <out>/runs.jsonl. Exit status is 0 on
success, 2 on validation failures and 3 on numerical failures.

Usage:
    wgqed spectrum --config fig2b.yaml --out out/2b
    wgqed scan --config two_atoms.yaml --axis detuning --range -4:4:81
    wgqed figure 7b --out out --threads 4
    wgqed runs --out out --command scan
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click
import numpy as np
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from src.cli.config import ScenarioFile, load_scenario_file
from src.cli.figures import FigurePreset, Panel, PanelKind, figure_preset
from src.cli.writers import (
    relative_reflected_width,
    write_bandwidth,
    write_concurrence,
    write_pulse_shapes,
    write_scan,
    write_spectrum,
    write_summary,
    write_trajectory,
)
from src.core.errors import NumericalError, ValidationError, WgqedError
from src.core.model import FeatureKind
from src.freq_domain.solver import solve_spectra
from src.observables.entanglement import concurrence_trajectory
from src.observables.features import select, spectral_features
from src.observables.pulse_shape import PULSE_EXTENT, pulse_shape
from src.observables.scan import ScanAxis, ScenarioTemplate, parameter_scan
from src.observables.transport import reflect_transmit
from src.runlog.ledger import RunLedger, RunSummary
from src.time_domain.dde import integrate_dde

logger = logging.getLogger(__name__)

LEDGER_FILE = "runs.jsonl"


@dataclass
class RunReport:
    """What a command produced, for the ledger and the terminal summary"""
    scenario_hash: Optional[str] = None
    n_atoms: int = 0
    rows: List[Tuple[str, str]] = field(default_factory=list)
    files: List[Path] = field(default_factory=list)


# ============================================================================
# Runners
# ============================================================================

def run_dynamics(scenario_file: ScenarioFile, out_dir: Path, report: RunReport) -> RunReport:
    """Time-domain pipeline for one scenario"""
    report.scenario_hash = scenario_file.scenario_hash()
    scenario = scenario_file.to_scenario()
    report.n_atoms = scenario.n_atoms

    trajectory = integrate_dde(scenario, scenario_file.dde_settings(scenario))
    report.files.append(write_trajectory(out_dir / "trajectory.csv", trajectory, report.scenario_hash))

    peaks = trajectory.probabilities.max(axis=0)
    for j, peak in enumerate(peaks, start=1):
        report.rows.append((f"max |alpha_{j}|^2", f"{peak:.4f}"))
    report.rows.append(("final excitation", f"{trajectory.total_excitation()[-1]:.2e}"))

    if scenario.n_atoms == 2:
        concurrence = concurrence_trajectory(trajectory)
        report.files.append(write_concurrence(out_dir / "concurrence.csv", concurrence, report.scenario_hash))
        report.rows.append(("max concurrence", f"{concurrence.maximum:.4f}"))
    for warning in trajectory.warnings:
        report.rows.append(("warning", warning))
    return report


def run_spectrum(scenario_file: ScenarioFile, out_dir: Path, report: RunReport) -> RunReport:
    """Frequency-domain pipeline for one scenario"""
    report.scenario_hash = scenario_file.scenario_hash()
    scenario = scenario_file.to_scenario()
    report.n_atoms = scenario.n_atoms

    spectra = solve_spectra(scenario)
    summary = reflect_transmit(spectra, spectral_features(spectra))
    report.files.append(write_spectrum(out_dir / "spectrum.csv", spectra, report.scenario_hash))
    report.files.append(write_summary(out_dir / "summary.csv", summary, report.scenario_hash))

    report.rows.append(("R", f"{summary.reflectivity:.4f}"))
    report.rows.append(("T", f"{summary.transmittivity:.4f}"))
    report.rows.append(("guided fraction", f"{summary.guided_fraction:.4f}"))
    for gap in select(summary.features, FeatureKind.BANDGAP):
        report.rows.append(("bandgap width / Delta", f"{gap.width:.4f}"))

    output = scenario_file.output
    if output.pulse_times:
        rate = scenario.gamma if scenario.gamma > 0 else scenario.delta * scenario.v_g
        profiles = []
        for t_scaled in output.pulse_times:
            t = t_scaled / rate
            if output.x_span is not None:
                half = output.x_span / scenario.delta
            else:
                half = scenario.v_g * abs(t) + PULSE_EXTENT / scenario.delta
            x = np.linspace(-half, half, output.x_points)
            profiles.append(pulse_shape(spectra, x, t, scenario.v_g, scenario.k_a))
        report.files.append(write_pulse_shapes(out_dir / "pulseshape.csv", profiles, report.scenario_hash))

    for warning in summary.warnings:
        report.rows.append(("warning", warning))
    return report


def run_scan(
    scenario_file: ScenarioFile,
    axis: ScanAxis,
    values: np.ndarray,
    out_dir: Path,
    report: RunReport,
    threads: Optional[int] = None,
    bandwidth: bool = False,
) -> RunReport:
    """Parameter scan around one scenario"""
    report.scenario_hash = scenario_file.scenario_hash()
    base = scenario_file.to_scenario()
    report.n_atoms = base.n_atoms

    template = ScenarioTemplate(base.config, base.pulse, scenario_file.grid.points, scenario_file.grid.extent)
    table = parameter_scan(template, axis, values, threads=threads, with_features=bandwidth)
    if bandwidth:
        report.files.append(write_bandwidth(out_dir / "bandwidth.csv", table, report.scenario_hash))
        widths = [relative_reflected_width(row) for row in table.rows]
        report.rows.append(("relative reflected FWHM", f"{np.nanmin(widths):.3f} .. {np.nanmax(widths):.3f}"))
    else:
        report.files.append(write_scan(out_dir / "scan.csv", table, report.scenario_hash))

    report.rows.append(("points", str(len(table.rows))))
    failed = sum(row.error is not None for row in table.rows)
    if failed:
        report.rows.append(("failed points", str(failed)))
    report.rows.append(("max R", f"{np.nanmax(table.reflectivity):.4f}"))
    if axis == ScanAxis.DETUNING:
        width = table.reflectivity_fwhm()
        report.rows.append(("R FWHM / Delta", f"{width:.3f}" if width is not None else "n/a"))
    return report


def run_panel(
    panel: Panel,
    out_dir: Path,
    report: RunReport,
    threads: Optional[int] = None,
    grid_points: Optional[int] = None,
    grid_extent: Optional[float] = None,
) -> None:
    """Run one figure panel into out_dir/<panel name>"""
    scenario_file = ScenarioFile.from_mapping(panel.scenario).with_overrides(grid_points, grid_extent)
    panel_dir = out_dir / panel.name
    panel_report = RunReport()
    if panel.kind == PanelKind.DYNAMICS:
        run_dynamics(scenario_file, panel_dir, panel_report)
    elif panel.kind == PanelKind.SPECTRUM:
        run_spectrum(scenario_file, panel_dir, panel_report)
    else:
        run_scan(
            scenario_file,
            panel.axis,
            np.asarray(panel.values),
            panel_dir,
            panel_report,
            threads=threads,
            bandwidth=panel.kind == PanelKind.BANDWIDTH,
        )
    report.n_atoms = max(report.n_atoms, panel_report.n_atoms)
    report.files.extend(panel_report.files)
    report.rows.extend((f"{panel.name}: {label}", value) for label, value in panel_report.rows)


def parse_range(range_spec: str, axis: ScanAxis) -> np.ndarray:
    """
    Parse "start:stop:count" into evenly spaced axis values.

    Raises:
        ValidationError: If the range is malformed
    """
    parts = str(range_spec).split(":")
    try:
        if len(parts) != 3:
            raise ValueError("expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValidationError(f"malformed range {range_spec!r}: {e}") from e
    if count < 1:
        raise ValidationError(f"malformed range {range_spec!r}: count must be >= 1")
    if not (np.isfinite(start) and np.isfinite(stop)):
        raise ValidationError(f"malformed range {range_spec!r}: bounds must be finite")
    values = np.linspace(start, stop, count)
    if axis == ScanAxis.N_ATOMS:
        if not np.allclose(values, np.round(values)):
            raise ValidationError(f"malformed range {range_spec!r}: n_atoms values must be integers")
        values = np.round(values)
    return values


# ============================================================================
# Command plumbing
# ============================================================================

def _status(error: WgqedError) -> str:
    if isinstance(error, ValidationError):
        return "validation_error"
    if isinstance(error, NumericalError):
        return "numerical_error"
    return "error"


def _print_report(title: str, report: RunReport) -> None:
    console = Console()
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    for label, value in report.rows:
        table.add_row(label, value)
    console.print(table)
    for path in report.files:
        console.print(f"wrote {path}")


def _execute(command: str, out_dir: Path, action: Callable[[RunReport], RunReport]) -> None:
    """Run an action, record it in the ledger and map errors to exit codes"""
    out_dir = Path(out_dir)
    ledger = RunLedger(out_dir / LEDGER_FILE)
    report = RunReport()
    start = time.perf_counter()
    status, message, exit_code = "ok", None, 0
    try:
        action(report)
    except WgqedError as e:
        status, message, exit_code = _status(e), str(e), e.exit_code
        logger.error(f"{command} failed: {e}")
    except Exception as e:
        status, message = "error", f"{type(e).__name__}: {e}"
        raise
    finally:
        runtime_ms = (time.perf_counter() - start) * 1000.0
        ledger.log_run(
            command=command,
            scenario_hash=report.scenario_hash,
            n_atoms=report.n_atoms,
            status=status,
            runtime_ms=runtime_ms,
            error=message,
        )
        ledger.flush_and_close()

    if exit_code:
        click.echo(f"Error: {message}", err=True)
        click.get_current_context().exit(exit_code)
    _print_report(command, report)


def _load(config: Path, grid_points: Optional[int], grid_extent: Optional[float]) -> ScenarioFile:
    return load_scenario_file(config).with_overrides(grid_points, grid_extent)


def run_options(func):
    """Options shared by every command"""
    func = click.option("--grid-extent", type=float, default=None, help="k-grid half-width in units of Delta")(func)
    func = click.option("--grid-points", type=int, default=None, help="Number of k-grid points")(func)
    func = click.option(
        "--threads", type=click.IntRange(min=1), default=None, envvar="WGQED_THREADS", help="Worker cap for scans"
    )(func)
    func = click.option(
        "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("out"), help="Output directory"
    )(func)
    return func


def config_option(func):
    return click.option(
        "--config",
        "config",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        required=True,
        help="YAML scenario file",
    )(func)


# ============================================================================
# Commands
# ============================================================================

@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
def cli(verbose: bool):
    """Single-photon transport through waveguide-coupled atomic chains."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


@cli.command()
@config_option
@run_options
def dynamics(config, out_dir, threads, grid_points, grid_extent):
    """Integrate atomic amplitudes in time."""
    _execute(
        "dynamics",
        out_dir,
        lambda report: run_dynamics(_load(config, grid_points, grid_extent), out_dir, report),
    )


@cli.command()
@config_option
@run_options
def spectrum(config, out_dir, threads, grid_points, grid_extent):
    """Solve the stationary reflected and transmitted spectra."""
    _execute(
        "spectrum",
        out_dir,
        lambda report: run_spectrum(_load(config, grid_points, grid_extent), out_dir, report),
    )


@cli.command()
@config_option
@click.option("--axis", type=click.Choice([a.value for a in ScanAxis]), required=True, help="Scenario axis to vary")
@click.option("--range", "range_spec", required=True, help="start:stop:count in axis units")
@run_options
def scan(config, axis, range_spec, out_dir, threads, grid_points, grid_extent):
    """Scan reflectivity and transmittivity over one axis."""
    scan_axis = ScanAxis(axis)

    def action(report: RunReport) -> RunReport:
        values = parse_range(range_spec, scan_axis)
        return run_scan(_load(config, grid_points, grid_extent), scan_axis, values, out_dir, report, threads=threads)

    _execute("scan", out_dir, action)


@cli.command()
@click.argument("figure_id")
@run_options
def figure(figure_id, out_dir, threads, grid_points, grid_extent):
    """Regenerate the dataset(s) of a figure preset."""

    def action(report: RunReport) -> RunReport:
        preset: FigurePreset = figure_preset(figure_id)
        figure_dir = Path(out_dir) / f"figure_{preset.figure_id}"
        report.scenario_hash = preset.scenario_hash()
        logger.info(f"Figure {preset.figure_id}: {preset.description} ({len(preset.panels)} panels)")
        for panel in preset.panels:
            run_panel(panel, figure_dir, report, threads, grid_points, grid_extent)
        return report

    _execute("figure", out_dir, action)


@cli.command()
@click.option(
    "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("out"), help="Output directory"
)
@click.option("--command", "command", default=None, help="Only runs of this command")
def runs(out_dir, command):
    """Summarize the run ledger."""
    summary = RunSummary(Path(out_dir) / LEDGER_FILE)
    counts = summary.status_counts(command)
    if not counts:
        click.echo(f"No runs recorded in {Path(out_dir) / LEDGER_FILE}")
        return
    report = RunReport()
    for status, count in sorted(counts.items()):
        report.rows.append((f"runs {status}", str(count)))
    for name, value in summary.runtime_percentiles(command).items():
        report.rows.append((f"runtime {name} [ms]", f"{value:.1f}"))
    _print_report(f"runs ({command})" if command else "runs", report)


def main():
    """Console entry point; .env is read before options are parsed"""
    load_dotenv()
    cli()


if __name__ == "__main__":
    main()
