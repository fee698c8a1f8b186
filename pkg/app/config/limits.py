# dccr/app/config/limits.py
"""
Purpose: Enforce desk-scale numeric limits defined in config settings.

- Dense eigensolver dimension cap (reject, never switch algorithms silently)
- Dense periodic-grid Hamiltonian cap
- Phase lattice size for band sweeps (soft warning, hard cap)
- Butterfly denominator cap
- Grid point counts for discretized Hamiltonians
"""

from __future__ import annotations

from app.config.settings import get_settings
from app.logging.logger import get_logger

logger = get_logger("config.limits")


class NumericLimitError(ValueError):
    pass


class NumericLimitsEnforcer:
    def __init__(self) -> None:
        self.settings = get_settings()
        self.limits = self.settings.limits

    # ---------- Dense linear algebra ----------

    def check_dense_dim(self, dim: int, what: str = "matrix") -> None:
        if dim > self.limits.max_dense_dim:
            raise NumericLimitError(
                f"{what} dimension {dim} exceeds dense eigensolver cap {self.limits.max_dense_dim}"
            )

    def check_periodic_dim(self, n_points: int) -> None:
        if n_points > self.limits.max_periodic_dim:
            raise NumericLimitError(
                f"periodic grid of {n_points} points exceeds dense Hamiltonian cap {self.limits.max_periodic_dim}; "
                "use the truncated mode for larger grids"
            )

    # ---------- Sweeps ----------

    def check_phase_lattice(self, n_phase: int) -> None:
        if n_phase > self.limits.max_phase_lattice:
            raise NumericLimitError(
                f"Phase lattice {n_phase} exceeds hard cap {self.limits.max_phase_lattice}"
            )
        if n_phase > self.limits.soft_phase_lattice:
            logger.warning("Phase lattice exceeds soft cap", extra={
                "n_phase": n_phase,
                "soft_cap": self.limits.soft_phase_lattice,
                "eigensolves": n_phase * n_phase
            })

    def check_butterfly_q(self, q_max: int) -> None:
        if q_max > self.limits.max_butterfly_q:
            raise NumericLimitError(
                f"Butterfly denominator {q_max} exceeds cap {self.limits.max_butterfly_q}"
            )

    # ---------- Grids ----------

    def check_grid_points(self, n_points: int) -> None:
        if n_points > self.limits.max_grid_points:
            raise NumericLimitError(
                f"Grid size {n_points} exceeds cap {self.limits.max_grid_points}"
            )
        if n_points > self.limits.soft_grid_points:
            logger.warning("Grid size exceeds soft cap", extra={
                "n_points": n_points,
                "soft_cap": self.limits.soft_grid_points
            })
