"""
Scenario files - strict YAML schema for the wgqed command line

Features:
- pydantic models per section, unknown keys rejected
- Missing required keys reported as "<section>.<key> required"
- CLI overrides for grid size and extent
- SHA-256 scenario hash over the canonical JSON of the resolved file

Scenario file layout (all values dimensionless):

    system:
      n_atoms: 2
      spacing: 0.25          # lambda_a
      eta: 1.0               # Gamma / (Delta v_g)
      gamma_free: 0.0        # gamma / Gamma
    pulse:
      shape: gaussian        # or inversion
      width: 0.02            # Delta
      center_detuning: 0.0   # Delta
    grid:
      points: 4096
      extent: 8.0            # Delta
    solver:
      step: null             # 1/Gamma, null = default
      horizon: null          # 1/Gamma after the pulse has crossed the chain
    output:
      pulse_times: [20.0]    # 1/Gamma

Usage:
    from src.cli.config import load_scenario_file

    scenario_file = load_scenario_file(Path("fig2b.yaml"))
    scenario = scenario_file.to_scenario()
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as SchemaError

from src.core.errors import ValidationError
from src.core.model import PulseShape, PulseSpec, SystemConfig
from src.core.validation import ValidatedScenario, default_grid, validate
from src.time_domain.dde import DdeSettings, DelayInterpolation, Retardation

logger = logging.getLogger(__name__)

SECTIONS = ("system", "pulse", "grid", "solver", "output")


class SystemSection(BaseModel):
    """Atomic chain"""
    model_config = ConfigDict(extra="forbid")

    n_atoms: int = Field(default=1, ge=1, description="Number of atoms")
    spacing: float = Field(default=0.5, ge=0, description="Atom spacing in resonant wavelengths")
    eta: float = Field(default=1.0, ge=0, description="Gamma / (Delta v_g)")
    gamma_free: float = Field(default=0.0, ge=0, description="Free-space decay in units of Gamma")
    r_1: float = Field(default=0.0, description="First atom position in resonant wavelengths")
    regularize: bool = Field(default=False, description="Regularize near-singular spectral systems")


class PulseSection(BaseModel):
    """Input photon"""
    model_config = ConfigDict(extra="forbid")

    shape: PulseShape = Field(default=PulseShape.GAUSSIAN)
    width: float = Field(..., description="Spectral width Delta")
    center_detuning: float = Field(default=0.0, description="k_0 - k_a in units of Delta")
    initial_offset: float = Field(default=10.0, ge=0, description="Pulse-atom distance in units of 1/Delta")


class GridSection(BaseModel):
    """k-grid"""
    model_config = ConfigDict(extra="forbid")

    points: int = Field(default=4096, ge=8)
    extent: float = Field(default=8.0, gt=0, description="Half-width in units of Delta")


class SolverSection(BaseModel):
    """Delay-equation integrator"""
    model_config = ConfigDict(extra="forbid")

    step: Optional[float] = Field(default=None, gt=0, description="Time step in units of 1/Gamma")
    horizon: Optional[float] = Field(
        default=None, gt=0, description="Integration time after the pulse crosses the chain, units of 1/Gamma"
    )
    delay_interpolation: DelayInterpolation = Field(default=DelayInterpolation.CUBIC)
    retardation: Retardation = Field(default=Retardation.FULL)


class OutputSection(BaseModel):
    """Optional outputs"""
    model_config = ConfigDict(extra="forbid")

    pulse_times: List[float] = Field(default_factory=list, description="Pulse-shape times in units of 1/Gamma")
    x_points: int = Field(default=2048, ge=2)
    x_span: Optional[float] = Field(default=None, gt=0, description="Half-width of the x-grid in units of 1/Delta")


class ScenarioFile(BaseModel):
    """A complete scenario document"""
    model_config = ConfigDict(extra="forbid")

    system: SystemSection
    pulse: PulseSection
    grid: GridSection
    solver: SolverSection
    output: OutputSection

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "ScenarioFile":
        """
        Validate a parsed document.

        Raises:
            ValidationError: Naming every offending key
        """
        if not isinstance(data, dict):
            raise ValidationError("scenario file must be a mapping of sections")
        data = dict(data)
        for section in SECTIONS:
            if data.get(section) is None:
                data[section] = {}
        try:
            return cls.model_validate(data)
        except SchemaError as e:
            raise ValidationError(_describe(e)) from e

    def with_overrides(self, grid_points: Optional[int] = None, grid_extent: Optional[float] = None) -> "ScenarioFile":
        """Copy with CLI grid overrides applied"""
        update: Dict[str, Any] = {}
        if grid_points is not None:
            update["points"] = grid_points
        if grid_extent is not None:
            update["extent"] = grid_extent
        if not update:
            return self
        grid = self.grid.model_dump()
        grid.update(update)
        return ScenarioFile.from_mapping({**self.model_dump(mode="json"), "grid": grid})

    def scenario_hash(self) -> str:
        """SHA-256 of the canonical JSON dump"""
        data_str = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(data_str.encode()).hexdigest()

    def to_scenario(self) -> ValidatedScenario:
        """Validated scenario for the solvers"""
        config = SystemConfig(
            n_atoms=self.system.n_atoms,
            spacing=self.system.spacing,
            gamma_wg=self.system.eta,
            gamma_free=self.system.gamma_free,
            r_1=self.system.r_1,
            regularize=self.system.regularize,
        )
        pulse = PulseSpec(
            shape=self.pulse.shape,
            width=self.pulse.width,
            center_detuning=self.pulse.center_detuning,
            initial_offset=self.pulse.initial_offset,
        )
        return validate(config, pulse, default_grid(pulse, self.grid.points, self.grid.extent))

    def dde_settings(self, scenario: ValidatedScenario) -> DdeSettings:
        """Integrator settings with step and horizon converted from units of 1/Gamma"""
        rate = scenario.gamma if scenario.gamma > 0 else scenario.delta * scenario.v_g
        step = self.solver.step / rate if self.solver.step is not None else None
        horizon = None
        if self.solver.horizon is not None:
            transit = (scenario.n_atoms - 1) * scenario.spacing / scenario.v_g
            horizon = scenario.arrival_time + transit + self.solver.horizon / rate
        return DdeSettings(
            step=step,
            horizon=horizon,
            delay_interpolation=self.solver.delay_interpolation,
            retardation=self.solver.retardation,
        )


def _describe(error: SchemaError) -> str:
    messages = []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"])
        if item["type"] == "missing":
            messages.append(f"{key} required")
        elif item["type"] == "extra_forbidden":
            messages.append(f"{key}: unknown key")
        else:
            messages.append(f"{key}: {item['msg']}")
    return "; ".join(messages)


def load_scenario_file(path: Path) -> ScenarioFile:
    """
    Read and validate a YAML scenario file.

    Raises:
        ValidationError: If the file is unreadable, not YAML, or fails the schema
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read scenario file {path}: {e}") from e
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ValidationError(f"scenario file {path} is not valid YAML: {e}") from e
    scenario_file = ScenarioFile.from_mapping(data)
    logger.debug(f"Loaded scenario file {path} ({scenario_file.scenario_hash()[:12]})")
    return scenario_file
