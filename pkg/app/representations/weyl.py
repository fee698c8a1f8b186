# dccr/app/representations/weyl.py
"""
Purpose: Weyl systems and the representation map of l1(Z+Z, omega).

A Weyl system is anything exposing `theta`, `dim` and `monomial(x)`; every
W_x is a monomial matrix (one nonzero per row), returned as (cols, values)
with rows 0..dim-1. Both the clock/shift representations and the periodic
grid are Weyl systems.

- weyl: dense W_x
- d_op: D_x = W_x + W_{-x}
- represent: pi(f) = sum_x f(x) W_x (= 1/2 sum f(x) D_x on D_theta)
- normalized_trace: tr(M)/dim
- phi_operator: (1 - u^2)(1 + u^2 - uX)^{-1} for Hermitian X with ||X|| <= 2
"""

from __future__ import annotations

from typing import Protocol, Tuple

import numpy as np
import scipy.linalg

from app.algebra.element import AlgebraElement
from app.algebra.theta import PointLike, Theta, as_point
from app.logging.logger import get_logger

logger = get_logger("representations.weyl")


class RepresentationError(ValueError):
    pass


class WeylSystem(Protocol):
    @property
    def theta(self) -> Theta: ...

    @property
    def dim(self) -> int: ...

    def monomial(self, x: PointLike) -> Tuple[np.ndarray, np.ndarray]: ...


def weyl(system: WeylSystem, x: PointLike) -> np.ndarray:
    """Dense W_x; weyl(system, 0) is the identity."""
    cols, values = system.monomial(as_point(x))
    out = np.zeros((system.dim, system.dim), dtype=np.complex128)
    out[np.arange(system.dim), cols] = values
    return out


def d_op(system: WeylSystem, x: PointLike) -> np.ndarray:
    """D_x = W_x + W_{-x}; Hermitian with operator norm <= 2."""
    x = as_point(x)
    return weyl(system, x) + weyl(system, -x)


def represent(f: AlgebraElement, system: WeylSystem) -> np.ndarray:
    """pi(f) = sum_x f(x) W_x."""
    if f.theta != system.theta:
        raise RepresentationError(f"theta mismatch: element {f.theta} vs representation {system.theta}")
    rows = np.arange(system.dim)
    out = np.zeros((system.dim, system.dim), dtype=np.complex128)
    for x, c in f.coeffs.items():
        cols, values = system.monomial(x)
        out[rows, cols] += c * values
    return out


def represent_symmetric(f: AlgebraElement, system: WeylSystem) -> np.ndarray:
    """1/2 sum_x f(x) D_x; agrees with represent() exactly when f lies in D_theta."""
    if f.theta != system.theta:
        raise RepresentationError(f"theta mismatch: element {f.theta} vs representation {system.theta}")
    out = np.zeros((system.dim, system.dim), dtype=np.complex128)
    for x, c in f.coeffs.items():
        out += 0.5 * c * d_op(system, x)
    return out


def normalized_trace(M: np.ndarray) -> complex:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise RepresentationError(f"normalized_trace needs a square matrix, got shape {M.shape}")
    return complex(np.trace(M) / M.shape[0])


def operator_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))


def phi_operator(u: float, X: np.ndarray) -> np.ndarray:
    """Functional calculus phi(u, X); 1 + u^2 - uX >= (1 - |u|)^2 > 0 keeps the solve well posed."""
    if not abs(u) < 1.0:
        raise RepresentationError(f"u must satisfy |u| < 1, got {u}")
    dim = X.shape[0]
    eye = np.eye(dim, dtype=np.complex128)
    return scipy.linalg.solve((1.0 + u * u) * eye - u * X, (1.0 - u * u) * eye, assume_a="pos")
