# dccr/app/cli/config.py
"""
Purpose: Per-run configuration: a flat YAML key/value file plus command-line overrides.

Grammar: one `key: value` per line, scalars or flat lists only, keys as in RunConfig
(`lambda` for the witness point). Overrides given on the command line win over the file.
Schema violations raise ConfigError; module preconditions (coprimality, grid
alignment, |lambda| < 1, ...) are checked by the modules themselves.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.config.settings import get_settings
from app.discretization.potentials import PotentialSpec, constant, harmonic, quartic, tabulated
from app.logging.logger import get_logger

logger = get_logger("cli.config")

Subcommand = Literal["verify", "spectrum", "butterfly", "oscillator", "witness"]


class ConfigError(Exception):
    pass


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    subcommand: Subcommand
    seed: int = Field(default=0, ge=0)
    output_dir: Optional[Path] = None

    # spectrum / butterfly / measures
    p: int = Field(default=1, ge=0)
    q: int = Field(default=2, ge=1)
    c: float = Field(default=1.0, ge=0)
    n_phase: int = Field(default=16, ge=2)
    q_max: int = Field(default=20, ge=2)
    q_list: List[int] = Field(default_factory=lambda: [5, 8, 13, 21, 34])
    dump_matrix: bool = False
    phi1: float = 0.0
    phi2: float = 0.0

    # oscillator
    mode: Literal["periodic", "truncated"] = "periodic"
    n_points: int = Field(default=512, ge=2)
    m_steps: int = Field(default=1, ge=1)
    k: int = Field(default=1, ge=1)
    tau: float = Field(default=0.1, gt=0)
    half_length: float = Field(default=12.0, gt=0)
    n_levels: int = Field(default=5, ge=1)
    potential: Literal["harmonic", "quartic", "constant", "tabulated"] = "harmonic"
    quartic_b: float = 0.0
    v0: float = 0.0
    potential_table: Optional[Path] = None

    # witness
    lambda_: float = Field(default=0.0, alias="lambda")
    n_max: int = Field(default=25, ge=1)
    n_samples: int = Field(default=10_000, ge=4)

    # verify
    intertwiner_points: int = Field(default=1024, ge=4)
    reduction_points: int = Field(default=512, ge=2)
    corrupt_omega: bool = False

    @model_validator(mode="after")
    def _check_subcommand(self) -> RunConfig:
        if self.subcommand == "oscillator" and self.potential == "tabulated" and self.potential_table is None:
            raise ValueError("potential 'tabulated' needs potential_table")
        if self.subcommand == "oscillator" and self.mode == "periodic" and self.n_points % 2:
            raise ValueError(f"periodic mode needs an even n_points, got {self.n_points}")
        if any(q < 1 for q in self.q_list):
            raise ValueError("q_list entries must be >= 1")
        return self

    def resolved_output_dir(self) -> Path:
        return self.output_dir or get_settings().output_dir / self.subcommand

    def potential_spec(self) -> PotentialSpec:
        if self.potential == "harmonic":
            return harmonic(self.c)
        if self.potential == "quartic":
            return quartic(self.c, self.quartic_b)
        if self.potential == "constant":
            return constant(self.v0)
        return _load_table(self.potential_table)

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


def _load_table(path: Path) -> PotentialSpec:
    import numpy as np

    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except OSError as e:
        raise ConfigError(f"Cannot read potential table {path}: {e}") from e
    return tabulated(data[:, 0], data[:, 1])


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file is not valid YAML: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file must be a flat key/value mapping, got {type(data).__name__}")
    for key, value in data.items():
        if isinstance(value, dict) or (isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)):
            raise ConfigError(f"Config key '{key}' must be a scalar or a flat list")
    return data


def load_run_config(
    subcommand: str,
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    values: Dict[str, Any] = _read_yaml(config_path) if config_path else {}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if "lambda_" in values:
        values["lambda"] = values.pop("lambda_")
    file_subcommand = values.pop("subcommand", subcommand)
    if file_subcommand != subcommand:
        raise ConfigError(f"Config file is for '{file_subcommand}', not '{subcommand}'")

    try:
        config = RunConfig(subcommand=subcommand, **values)
    except ValidationError as e:
        logger.warning("Run config rejected", extra={"subcommand": subcommand, "errors": e.error_count()})
        raise ConfigError(f"Invalid run config: {e}") from e

    logger.debug("Run config loaded", extra={"subcommand": subcommand, "config_file": str(config_path)})
    return config
