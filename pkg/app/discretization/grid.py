# dccr/app/discretization/grid.py
"""
Purpose: Periodic N-point model of L2(R) carrying the one-parameter groups U_t, V_t.

Grid: x_j = (j - N/2) h, h = sqrt(2 pi k / (m_steps N)), tau = m_steps h.
Then tau N h = 2 pi k, so e^{i tau x} is N-periodic and V_t U_s = e^{ist} U_s V_t
holds exactly on the grid for every grid-aligned s, t. The effective rotation
angle theta_eff = tau^2 = 2 pi k m_steps / N is always rational and kept below 2 pi
(k m_steps < N), so its reduced fraction carries the exact half-phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from app.algebra.theta import PointLike, RationalTheta, as_point
from app.config.limits import NumericLimitsEnforcer
from app.logging.logger import get_logger
from app.representations.weyl import d_op, weyl

logger = get_logger("discretization.grid")

_INT_TOL = 1e-9


class GridError(ValueError):
    pass


class GridAlignmentError(GridError):
    pass


def _as_integer(value: float, what: str) -> int:
    nearest = round(value)
    if abs(value - nearest) > _INT_TOL * max(1.0, abs(value)):
        raise GridAlignmentError(f"{what} is not grid-aligned ({value!r} is not an integer)")
    return int(nearest)


@dataclass(frozen=True)
class GridModel:
    n_points: int
    m_steps: int
    k: int
    h: float = field(init=False)
    theta: RationalTheta = field(init=False)

    def __post_init__(self) -> None:
        for name in ("n_points", "m_steps", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise GridError(f"{name} must be a positive integer, got {value!r}")
        if self.n_points % 2:
            raise GridError(f"n_points must be even so that x = 0 is a grid point, got {self.n_points}")
        if self.k * self.m_steps >= self.n_points:
            # tau^2 must stay below 2 pi: half-phases e^{imn theta/2} are not 2 pi-periodic in theta
            raise GridError(
                f"k * m_steps must be < n_points (tau^2 < 2 pi), got k={self.k}, m_steps={self.m_steps}, "
                f"n_points={self.n_points}"
            )
        object.__setattr__(self, "h", math.sqrt(2.0 * math.pi * self.k / (self.m_steps * self.n_points)))
        object.__setattr__(self, "theta", RationalTheta.of(self.k * self.m_steps, self.n_points))

    @property
    def dim(self) -> int:
        return self.n_points

    @property
    def tau(self) -> float:
        return self.m_steps * self.h

    @property
    def half_length(self) -> float:
        return self.n_points * self.h / 2.0

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.n_points) - self.n_points // 2) * self.h

    def monomial(self, x: PointLike) -> Tuple[np.ndarray, np.ndarray]:
        """Row j of e^{imn theta/2} U_{m tau} V_{n tau}: e^{imn theta/2} e^{i m tau x_j} at column j + n m_steps."""
        x = as_point(x)
        j = np.arange(self.n_points, dtype=np.int64)
        cols = np.mod(j + x.n * self.m_steps, self.n_points)
        values = complex(self.theta.half_phase(x.m * x.n)) * np.exp(1j * x.m * self.tau * self.points)
        return cols, values

    def describe(self) -> dict:
        return {
            "n_points": self.n_points,
            "m_steps": self.m_steps,
            "k": self.k,
            "h": self.h,
            "tau": self.tau,
            "half_length": self.half_length,
            "theta_eff": self.theta.describe(),
        }


def build_grid(n_points: int, m_steps: int, k: int) -> GridModel:
    NumericLimitsEnforcer().check_grid_points(n_points)
    grid = GridModel(n_points=n_points, m_steps=m_steps, k=k)
    logger.debug("Periodic grid built", extra=grid.describe())
    return grid


def u_op(grid: GridModel, t: float) -> np.ndarray:
    """U_t psi(x) = e^{itx} psi(x); needs t N h in 2 pi Z (every multiple of tau qualifies)."""
    _as_integer(t * grid.n_points * grid.h / (2.0 * math.pi), f"U_t with t={t}")
    return np.diag(np.exp(1j * t * grid.points))


def v_op(grid: GridModel, t: float) -> np.ndarray:
    """V_t psi(x) = psi(x + t) with wraparound; needs t / h integer."""
    shift = _as_integer(t / grid.h, f"V_t with t={t}")
    return shift_matrix(grid.n_points, shift)


def shift_matrix(n_points: int, shift: int) -> np.ndarray:
    """(S psi)_j = psi_{j + shift mod n}."""
    j = np.arange(n_points)
    out = np.zeros((n_points, n_points), dtype=np.complex128)
    out[j, np.mod(j + shift, n_points)] = 1.0
    return out


def reflection(grid: GridModel) -> np.ndarray:
    """R psi(x) = psi(-x), i.e. j -> N - j mod N about the origin x_{N/2} = 0."""
    j = np.arange(grid.n_points)
    out = np.zeros((grid.n_points, grid.n_points), dtype=np.complex128)
    out[j, np.mod(grid.n_points - j, grid.n_points)] = 1.0
    return out


def grid_weyl(grid: GridModel, x: PointLike) -> np.ndarray:
    return weyl(grid, x)


def grid_d_op(grid: GridModel, x: PointLike) -> np.ndarray:
    return d_op(grid, x)
