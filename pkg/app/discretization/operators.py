# dccr/app/discretization/operators.py
"""
Purpose: Discretized canonical operators, the sine/cosine intertwiner, H_tau and its almost Mathieu form.

Q_tau = (U_tau - U_{-tau}) / (2i tau) = sin(tau Q)/tau
P_tau = (V_tau - V_{-tau}) / (2i tau)
Q~_tau = (U_tau + U_{-tau}) / (2 tau),  P~_tau = (V_tau + V_{-tau}) / (2 tau)
W = R U_{-lambda} V_lambda, lambda = pi / (2 tau), carries (Q_tau, P_tau) to (Q~_tau, P~_tau).
H_tau = 1/2 P_tau^2 + v(Q_tau); for v = c x^2/2, H_tau = mu I + lambda_aff M2 with
M2 = V_{2tau} + V_{2tau}^* + c (U_{2tau} + U_{2tau}^*), lambda_aff = -1/(8 tau^2), mu = (1 + c)/(4 tau^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from app.discretization.grid import (
    GridAlignmentError,
    GridModel,
    reflection,
    u_op,
    v_op,
)
from app.discretization.potentials import PotentialError, PotentialSpec, harmonic
from app.logging.logger import get_logger

logger = get_logger("discretization.operators")


@dataclass(frozen=True, eq=False)
class AffineReduction:
    m2: np.ndarray
    scale: float
    offset: float
    u_tilde: np.ndarray
    v_tilde: np.ndarray
    commutation_phase: complex
    coupling: float


def q_tau(grid: GridModel) -> np.ndarray:
    tau = grid.tau
    return (u_op(grid, tau) - u_op(grid, -tau)) / (2j * tau)


def p_tau(grid: GridModel) -> np.ndarray:
    tau = grid.tau
    return (v_op(grid, tau) - v_op(grid, -tau)) / (2j * tau)


def cosine_pair(grid: GridModel) -> Tuple[np.ndarray, np.ndarray]:
    """(Q~_tau, P~_tau); 2 tau Q~_tau is the grid image of d_(1,0)."""
    tau = grid.tau
    q_cos = (u_op(grid, tau) + u_op(grid, -tau)) / (2.0 * tau)
    p_cos = (v_op(grid, tau) + v_op(grid, -tau)) / (2.0 * tau)
    return q_cos, p_cos


def intertwiner_lambda(grid: GridModel) -> float:
    return math.pi / (2.0 * grid.tau)


def intertwiner(grid: GridModel) -> np.ndarray:
    """
    W = R U_{-lambda} V_lambda.

    lambda / h = N / (4k) must be an integer shift, and lambda N h = pi N / (2 m_steps)
    must lie in 2 pi Z for U_lambda to respect wraparound.
    """
    n = grid.n_points
    if n % (4 * grid.k) or n % (4 * grid.m_steps):
        logger.warning("Intertwiner alignment failed", extra=grid.describe())
        raise GridAlignmentError(
            f"lambda not grid-aligned: need 4k | N and 4 m_steps | N (N={n}, k={grid.k}, m_steps={grid.m_steps})"
        )
    lam = intertwiner_lambda(grid)
    return reflection(grid) @ u_op(grid, -lam) @ v_op(grid, lam)


def _kinetic(grid: GridModel) -> np.ndarray:
    """1/2 P_tau^2 = (2I - V_{2tau} - V_{-2tau}) / (8 tau^2)."""
    tau = grid.tau
    eye = np.eye(grid.n_points, dtype=np.complex128)
    return (2.0 * eye - v_op(grid, 2.0 * tau) - v_op(grid, -2.0 * tau)) / (8.0 * tau * tau)


def hamiltonian(grid: GridModel, v: PotentialSpec) -> np.ndarray:
    """H_tau = 1/2 P_tau^2 + v(Q_tau); Q_tau is diagonal so v acts pointwise on sin(tau x)/tau."""
    tau = grid.tau
    potential = v(np.sin(tau * grid.points) / tau)
    return _kinetic(grid) + np.diag(potential.astype(np.complex128))


def almost_mathieu_reduction(grid: GridModel, potential: Union[PotentialSpec, float]) -> AffineReduction:
    if not isinstance(potential, PotentialSpec):
        potential = harmonic(potential)
    if potential.kind != "harmonic":
        raise PotentialError(f"almost Mathieu reduction needs a harmonic potential, got {potential.kind}")
    c = potential.coupling
    tau = grid.tau

    u_tilde = u_op(grid, 2.0 * tau)
    v_tilde = v_op(grid, 2.0 * tau)
    m2 = v_tilde + v_tilde.conj().T + c * (u_tilde + u_tilde.conj().T)

    reduction = AffineReduction(
        m2=m2,
        scale=-1.0 / (8.0 * tau * tau),
        offset=(1.0 + c) / (4.0 * tau * tau),
        u_tilde=u_tilde,
        v_tilde=v_tilde,
        commutation_phase=complex(np.exp(4j * tau * tau)),
        coupling=c,
    )
    logger.debug("Almost Mathieu reduction", extra={
        "tau": tau, "c": c, "scale": reduction.scale, "offset": reduction.offset
    })
    return reduction
