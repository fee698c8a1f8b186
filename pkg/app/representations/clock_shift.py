# dccr/app/representations/clock_shift.py
"""
Purpose: Finite clock/shift realizations of VU = e^{i theta} UV at theta = 2 pi p / q.

U = e^{i phi1} diag(e^{i theta j}), (V psi)_j = e^{i phi2} psi_{j+1 mod q}.
The twist phases (phi1, phi2) sweep the full family of q-dimensional
representations needed for band spectra; the parity J (e_j -> e_{-j}) realizes
sigma(W_x) = W_{-x} only on the untwisted member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from app.algebra.theta import PointLike, RationalTheta, as_point
from app.logging.logger import get_logger
from app.representations.weyl import RepresentationError, weyl

logger = get_logger("representations.clock_shift")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MatrixRep:
    p: int
    q: int
    phi1: float = 0.0
    phi2: float = 0.0
    theta: RationalTheta = field(init=False)

    def __post_init__(self) -> None:
        if self.q < 1:
            raise RepresentationError(f"q must be >= 1, got {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise RepresentationError(f"p={self.p} and q={self.q} are not coprime")
        object.__setattr__(self, "theta", RationalTheta.of(self.p, self.q))

    @property
    def dim(self) -> int:
        return self.q

    @property
    def twisted(self) -> bool:
        return self.phi1 != 0.0 or self.phi2 != 0.0

    def monomial(self, x: PointLike) -> Tuple[np.ndarray, np.ndarray]:
        """Row j of W_(m,n) = e^{imn theta/2} U^m V^n holds e^{i(m phi1 + n phi2)} e^{i theta (mn/2 + mj)} at column j+n."""
        x = as_point(x)
        j = np.arange(self.q, dtype=np.int64)
        cols = np.mod(j + x.n, self.q)
        twist = np.exp(1j * (x.m * self.phi1 + x.n * self.phi2))
        values = twist * self.theta.half_phase(x.m * x.n + 2 * x.m * j)
        return cols, values

    @property
    def U(self) -> np.ndarray:
        return _frozen(weyl(self, (1, 0)))

    @property
    def V(self) -> np.ndarray:
        return _frozen(weyl(self, (0, 1)))


def clock_shift(p: int, q: int, phi1: float = 0.0, phi2: float = 0.0) -> MatrixRep:
    rep = MatrixRep(p=p, q=q, phi1=float(phi1), phi2=float(phi2))
    logger.debug("Clock/shift representation built", extra={
        "p": rep.theta.p, "q": q, "phi1": rep.phi1, "phi2": rep.phi2
    })
    return rep


def parity(rep: MatrixRep) -> np.ndarray:
    """J: e_j -> e_{-j mod q}; J W_x J^* = W_{-x} on the untwisted representation."""
    if rep.twisted:
        raise RepresentationError("sigma not inner for twisted representation")
    j = np.arange(rep.q)
    J = np.zeros((rep.q, rep.q), dtype=np.complex128)
    J[np.mod(-j, rep.q), j] = 1.0
    return J
