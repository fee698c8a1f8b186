# dccr/app/config/settings.py
"""
Purpose: Centralized, validated configuration for the workbench (tolerances, limits, paths, logging, threads).
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class NumericTolerances(BaseModel):
    # Coefficients below double-precision resolution are dropped after every product
    prune_threshold: float = Field(default=1e-15, gt=0)
    symmetry_tolerance: float = Field(default=1e-14, gt=0)
    hermitian_tolerance: float = Field(default=1e-12, gt=0)
    # |sin(p q theta)| below this makes the d-recovery system singular
    resonance_threshold: float = Field(default=1e-9, gt=0)


class NumericLimits(BaseModel):
    """Hard caps for dense work at desk scale."""

    max_dense_dim: int = Field(default=256, ge=1)
    max_periodic_dim: int = Field(default=1024, ge=2)
    max_phase_lattice: int = Field(default=256, ge=2)
    soft_phase_lattice: int = Field(default=64, ge=2)
    max_butterfly_q: int = Field(default=128, ge=2)
    max_grid_points: int = Field(default=16384, ge=2)
    soft_grid_points: int = Field(default=2048, ge=2)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="DCCR_", case_sensitive=False, env_file=".env", extra="ignore")

    # Environment
    environment: str = Field(default="dev")
    service_name: str = Field(default="dccr")
    version: str = Field(default="0.1.0")

    # Output location for CSV/JSON products and logs
    output_dir: Path = Field(default=Path("data/runs"))

    # Worker threads for sweeps (DCCR_THREADS); None means all available
    threads: Optional[int] = Field(default=None, ge=1)

    # Policies
    tolerances: NumericTolerances = Field(default_factory=NumericTolerances)
    limits: NumericLimits = Field(default_factory=NumericLimits)

    # Logging config
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=True)
    log_to_file: bool = Field(default=False)

    @field_validator("environment")
    @classmethod
    def _env_normalize(cls, v: str) -> str:
        v = (v or "").strip().lower()
        return v or "dev"

    def worker_count(self) -> int:
        return self.threads or os.cpu_count() or 1


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
