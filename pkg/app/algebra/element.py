# dccr/app/algebra/element.py
"""
Purpose: Finitely supported elements of the twisted convolution algebra l1(Z+Z, omega).

- AlgebraElement: immutable coefficient map GroupPoint -> complex, pruned at 1e-15
- delta / d_generator: unit functions and the symmetric generators d_x = delta_x + delta_{-x}
- convolve: f*g(x) = sum_y omega(y, x) f(y) g(x - y)
- involution: f^*(x) = conj(f(-x)); parity_flip: f(x) -> f(-x)
- is_symmetric: membership in D_theta = {f : f(-x) = f(x)}
- JSON form {"theta": ..., "coeffs": [[m, n, re, im], ...]} sorted by (m, n)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from app.algebra.theta import (
    ORIGIN,
    GroupPoint,
    PointLike,
    Theta,
    as_point,
    points_array,
    theta_from_dict,
)
from app.config.settings import get_settings
from app.logging.logger import get_logger

logger = get_logger("algebra.element")


class AlgebraError(ValueError):
    pass


class ThetaMismatchError(AlgebraError):
    pass


def _prune_threshold() -> float:
    return get_settings().tolerances.prune_threshold


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    theta: Theta
    coeffs: Mapping[GroupPoint, complex]

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    @classmethod
    def from_terms(
        cls,
        theta: Theta,
        terms: Iterable[Tuple[PointLike, complex]],
        prune: Optional[float] = None,
    ) -> AlgebraElement:
        """Sum repeated points and drop coefficients below the prune threshold."""
        threshold = _prune_threshold() if prune is None else prune
        acc: Dict[GroupPoint, complex] = {}
        for x, c in terms:
            x = as_point(x)
            acc[x] = acc.get(x, 0j) + complex(c)
        kept = {x: c for x, c in sorted(acc.items()) if abs(c) >= threshold}
        return cls(theta=theta, coeffs=MappingProxyType(kept))

    @classmethod
    def zero(cls, theta: Theta) -> AlgebraElement:
        return cls(theta=theta, coeffs=MappingProxyType({}))

    # ---------- Coefficient access ----------

    def coefficient(self, x: PointLike) -> complex:
        return self.coeffs.get(as_point(x), 0j)

    def support(self) -> List[GroupPoint]:
        return list(self.coeffs.keys())

    def l1_norm(self) -> float:
        return math.fsum(abs(c) for c in self.coeffs.values())

    def __len__(self) -> int:
        return len(self.coeffs)

    # ---------- Linear structure ----------

    def _check_theta(self, other: AlgebraElement) -> None:
        if self.theta != other.theta:
            raise ThetaMismatchError(f"theta mismatch: {self.theta} vs {other.theta}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check_theta(other)
        return AlgebraElement.from_terms(self.theta, [*self.coeffs.items(), *other.coeffs.items()])

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-1.0) * other

    def __neg__(self) -> AlgebraElement:
        return (-1.0) * self

    def __mul__(self, scalar: complex) -> AlgebraElement:
        if isinstance(scalar, AlgebraElement):
            return NotImplemented
        return AlgebraElement.from_terms(self.theta, [(x, scalar * c) for x, c in self.coeffs.items()])

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> AlgebraElement:
        return self * (1.0 / scalar)

    def __matmul__(self, other: AlgebraElement) -> AlgebraElement:
        return convolve(self, other)

    def max_deviation(self, other: AlgebraElement) -> float:
        """Largest coefficientwise |f(x) - g(x)| over the union of supports."""
        self._check_theta(other)
        keys = set(self.coeffs) | set(other.coeffs)
        if not keys:
            return 0.0
        return max(abs(self.coefficient(x) - other.coefficient(x)) for x in keys)

    # ---------- Serialization ----------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta": self.theta.describe(),
            "coeffs": [[x.m, x.n, c.real, c.imag] for x, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> AlgebraElement:
        theta = theta_from_dict(data["theta"])
        terms = [((int(m), int(n)), complex(re, im)) for m, n, re, im in data["coeffs"]]
        return cls.from_terms(theta, terms)


def delta(x: PointLike, theta: Theta) -> AlgebraElement:
    """Unit function supported at x."""
    return AlgebraElement.from_terms(theta, [(as_point(x), 1.0)])


def unit(theta: Theta) -> AlgebraElement:
    return delta(ORIGIN, theta)


def d_generator(x: PointLike, theta: Theta) -> AlgebraElement:
    """d_x = delta_x + delta_{-x}; d_0 = 2 delta_0."""
    x = as_point(x)
    return AlgebraElement.from_terms(theta, [(x, 1.0), (-x, 1.0)])


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """
    Twisted convolution f*g(x) = sum_y omega(y, x) f(y) g(x - y).

    Pairwise delta_y * delta_z = omega(y, z) delta_{y+z}, since omega(y, y + z) = omega(y, z).
    """
    if f.theta != g.theta:
        raise ThetaMismatchError(f"Cannot convolve across theta values: {f.theta} vs {g.theta}")
    if not f.coeffs or not g.coeffs:
        return AlgebraElement.zero(f.theta)

    ys = points_array(f.coeffs.keys())
    zs = points_array(g.coeffs.keys())
    fc = np.fromiter(f.coeffs.values(), dtype=np.complex128, count=len(f.coeffs))
    gc = np.fromiter(g.coeffs.values(), dtype=np.complex128, count=len(g.coeffs))

    # exponent n_y * m_z - m_y * n_z for every pair
    exponent = np.outer(ys[:, 1], zs[:, 0]) - np.outer(ys[:, 0], zs[:, 1])
    values = np.outer(fc, gc) * f.theta.half_phase(exponent)

    targets = (ys[:, None, :] + zs[None, :, :]).reshape(-1, 2)
    keys, inverse = np.unique(targets, axis=0, return_inverse=True)
    summed = np.zeros(len(keys), dtype=np.complex128)
    np.add.at(summed, inverse.reshape(-1), values.reshape(-1))

    return AlgebraElement.from_terms(
        f.theta, ((GroupPoint(int(m), int(n)), c) for (m, n), c in zip(keys, summed))
    )


def involution(f: AlgebraElement) -> AlgebraElement:
    """f^*(x) = conj(f(-x))."""
    return AlgebraElement.from_terms(f.theta, [(-x, c.conjugate()) for x, c in f.coeffs.items()])


def parity_flip(f: AlgebraElement) -> AlgebraElement:
    """sigma_0(f)(x) = f(-x); D_theta is its fixed set."""
    return AlgebraElement.from_terms(f.theta, [(-x, c) for x, c in f.coeffs.items()])


def is_symmetric(f: AlgebraElement, tol: Optional[float] = None) -> bool:
    tol = get_settings().tolerances.symmetry_tolerance if tol is None else tol
    for x, c in f.coeffs.items():
        if abs(c - f.coefficient(-x)) > tol:
            return False
    return True


def symmetrize(f: AlgebraElement) -> AlgebraElement:
    """Projection (f + sigma_0 f)/2 onto D_theta."""
    return 0.5 * (f + parity_flip(f))


def power(f: AlgebraElement, n: int) -> AlgebraElement:
    """
    n-fold twisted product of f with itself.

    Negative n is only defined for unitary elements, i.e. scalar multiples of a
    single delta with unit modulus, where f^{-1} = f^*.
    """
    if n < 0:
        if len(f) != 1 or abs(abs(next(iter(f.coeffs.values()))) - 1.0) > 1e-12:
            raise AlgebraError("Negative powers are defined only for unitary delta elements")
        return power(involution(f), -n)
    result = unit(f.theta)
    base = f
    while n:
        if n & 1:
            result = convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return result
