# dccr/app/discretization/truncated.py
"""
Purpose: Dirichlet-truncated grid for continuum-limit studies of H_tau.

No wraparound: x_j = (j - (N-1)/2) h on [-L, L], with h = tau / s so that
V_{+-2tau} is an integer shift by 2s sites. P_tau only couples sites 2s apart,
so H_tau splits into 2s decoupled sublattices and each level appears once per
sublattice (up to exponentially small offsets). The identities of the periodic
model hold here only approximately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from app.config.limits import NumericLimitsEnforcer
from app.discretization.grid import GridError
from app.discretization.potentials import PotentialSpec
from app.logging.logger import get_logger
from app.spectra.eigen import distinct_levels, eig_banded_lowest

logger = get_logger("discretization.truncated")


@dataclass(frozen=True)
class TruncatedGrid:
    n_points: int
    half_length: float
    tau: float
    substeps: int = field(init=False)
    h: float = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n_points, int) or self.n_points < 2:
            raise GridError(f"n_points must be an integer >= 2, got {self.n_points!r}")
        if not self.half_length > 0 or not self.tau > 0:
            raise GridError("half_length and tau must be positive")
        substeps = max(1, round(self.tau * self.n_points / (2.0 * self.half_length)))
        if 2 * substeps >= self.n_points:
            raise GridError(f"tau={self.tau} is too coarse for {self.n_points} points on [-L, L]")
        object.__setattr__(self, "substeps", substeps)
        object.__setattr__(self, "h", self.tau / substeps)

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.n_points) - (self.n_points - 1) / 2.0) * self.h

    @property
    def bandwidth(self) -> int:
        return 2 * self.substeps

    def describe(self) -> dict:
        return {
            "n_points": self.n_points,
            "half_length": self.half_length,
            "tau": self.tau,
            "h": self.h,
            "substeps": self.substeps,
        }


def build_truncated(n_points: int, half_length: float, tau: float) -> TruncatedGrid:
    NumericLimitsEnforcer().check_grid_points(n_points)
    grid = TruncatedGrid(n_points=n_points, half_length=float(half_length), tau=float(tau))
    logger.debug("Truncated grid built", extra=grid.describe())
    return grid


def banded_hamiltonian(grid: TruncatedGrid, v: PotentialSpec) -> np.ndarray:
    """H_tau in LAPACK upper band form: row `bandwidth` is the diagonal, row 0 the 2s-th superdiagonal."""
    tau = grid.tau
    band = grid.bandwidth
    a_band = np.zeros((band + 1, grid.n_points), dtype=np.float64)
    a_band[band] = 2.0 / (8.0 * tau * tau) + v(np.sin(tau * grid.points) / tau)
    a_band[0, band:] = -1.0 / (8.0 * tau * tau)
    return a_band


def dense_hamiltonian(grid: TruncatedGrid, v: PotentialSpec) -> np.ndarray:
    a_band = banded_hamiltonian(grid, v)
    band = grid.bandwidth
    H = np.diag(a_band[band])
    off = a_band[0, band:]
    H += np.diag(off, band) + np.diag(off, -band)
    return H


def oscillator_levels(grid: TruncatedGrid, v: PotentialSpec, n_levels: int, tol: float = 1e-6) -> np.ndarray:
    """Lowest n_levels distinct eigenvalues of H_tau on the truncated grid."""
    copies = grid.bandwidth
    count = min(grid.n_points, n_levels * copies)
    eigenvalues = eig_banded_lowest(banded_hamiltonian(grid, v), count)
    levels = distinct_levels(eigenvalues, tol=tol)[:n_levels]
    logger.info("Oscillator levels computed", extra={
        **grid.describe(), "eigenvalues": int(count), "levels": len(levels)
    })
    return levels
