# dccr/app/algebra/theta.py
"""
Purpose: Group points of G = Z+Z, the rotation parameter theta, and the bicharacter omega.

theta comes in two forms:
- RationalTheta(p, q): theta = 2*pi*p/q, always reduced with 0 <= p < q. Phases are
  evaluated with exact integer arithmetic mod 2q before a single exp call.
- RealTheta(value): theta in radians, for algebra-level identities at generic angles.

Simplicity and unique-trace statements about the rotation algebra need theta/pi
irrational; rational values here are computable approximants only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np


class ThetaError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GroupPoint:
    """An element x = (m, n) of G = Z+Z."""
    m: int
    n: int

    def __add__(self, other: GroupPoint) -> GroupPoint:
        return GroupPoint(self.m + other.m, self.n + other.n)

    def __sub__(self, other: GroupPoint) -> GroupPoint:
        return GroupPoint(self.m - other.m, self.n - other.n)

    def __neg__(self) -> GroupPoint:
        return GroupPoint(-self.m, -self.n)

    def scaled(self, k: int) -> GroupPoint:
        return GroupPoint(k * self.m, k * self.n)


PointLike = Union[GroupPoint, Tuple[int, int]]

ORIGIN = GroupPoint(0, 0)


def as_point(x: PointLike) -> GroupPoint:
    if isinstance(x, GroupPoint):
        return x
    m, n = x
    return GroupPoint(int(m), int(n))


def symplectic(x: GroupPoint, y: GroupPoint) -> int:
    """Integer exponent n*p - m*q of omega(x, y) for x = (m, n), y = (p, q)."""
    return x.n * y.m - x.m * y.n


@dataclass(frozen=True)
class RationalTheta:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ThetaError(f"Denominator must be positive, got q={self.q}")
        if not (0 <= self.p < self.q) or math.gcd(self.p, self.q) != 1:
            raise ThetaError(f"RationalTheta must be reduced with 0 <= p < q, got {self.p}/{self.q}")

    @classmethod
    def of(cls, p: int, q: int) -> RationalTheta:
        """Reduce p/q (mod 1) into canonical form."""
        if q == 0:
            raise ThetaError("Denominator q must be nonzero")
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        p, q = p // g, q // g
        return cls(p % q, q)

    @property
    def radians(self) -> float:
        return 2.0 * math.pi * self.p / self.q

    def half_phase(self, k):
        """e^{i k theta / 2} for integer k (scalar or integer array)."""
        r = np.mod(np.asarray(k, dtype=np.int64) * self.p, 2 * self.q)
        return np.exp(1j * np.pi * r / self.q)

    def resonant(self, k: int) -> bool:
        """True iff sin(k theta) vanishes exactly, i.e. q divides 2 p k."""
        return (2 * self.p * k) % self.q == 0

    def describe(self) -> dict:
        return {"p": self.p, "q": self.q}


@dataclass(frozen=True)
class RealTheta:
    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ThetaError(f"theta must be finite, got {self.value}")

    @property
    def radians(self) -> float:
        return self.value

    def half_phase(self, k):
        return np.exp(0.5j * self.value * np.asarray(k, dtype=np.float64))

    def resonant(self, k: int, threshold: float = 1e-9) -> bool:
        return abs(math.sin(k * self.value)) <= threshold

    def describe(self) -> dict:
        return {"real": self.value}


Theta = Union[RationalTheta, RealTheta]


def theta_from_dict(data: dict) -> Theta:
    if "real" in data:
        return RealTheta(float(data["real"]))
    try:
        return RationalTheta.of(int(data["p"]), int(data["q"]))
    except KeyError as exc:
        raise ThetaError(f"theta must carry p/q or real, got {data}") from exc


def omega(x: PointLike, y: PointLike, theta: Theta) -> complex:
    """Bicharacter omega((m,n),(p,q)) = e^{i(np - mq) theta / 2}."""
    return complex(theta.half_phase(symplectic(as_point(x), as_point(y))))


def points_array(points: Iterable[GroupPoint]) -> np.ndarray:
    return np.array([(x.m, x.n) for x in points], dtype=np.int64).reshape(-1, 2)
