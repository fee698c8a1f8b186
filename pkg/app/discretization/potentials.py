# dccr/app/discretization/potentials.py
"""
Purpose: Real-valued potentials v for H_tau = 1/2 P_tau^2 + v(Q_tau).

Kinds:
- harmonic(c):      v(x) = c x^2 / 2, c > 0
- quartic(a, b):    v(x) = a x^2 / 2 + b x^4
- constant(v0):     v(x) = v0
- tabulated(xs, vs): piecewise-linear through the samples, constant beyond the ends
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Tuple

import numpy as np


class PotentialError(ValueError):
    pass


PotentialKind = Literal["harmonic", "quartic", "constant", "tabulated"]


@dataclass(frozen=True)
class PotentialSpec:
    kind: PotentialKind
    params: Tuple[float, ...] = ()
    xs: Tuple[float, ...] = field(default=(), repr=False)
    values: Tuple[float, ...] = field(default=(), repr=False)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "harmonic":
            (c,) = self.params
            return 0.5 * c * x * x
        if self.kind == "quartic":
            a, b = self.params
            return 0.5 * a * x * x + b * x ** 4
        if self.kind == "constant":
            (v0,) = self.params
            return np.full_like(x, v0)
        return np.interp(x, self.xs, self.values)

    @property
    def coupling(self) -> float:
        """The constant c of a harmonic potential."""
        if self.kind != "harmonic":
            raise PotentialError(f"{self.kind} potential has no harmonic coupling")
        return self.params[0]

    def describe(self) -> dict:
        if self.kind == "tabulated":
            return {"kind": self.kind, "samples": len(self.xs)}
        return {"kind": self.kind, "params": list(self.params)}


def harmonic(c: float) -> PotentialSpec:
    if not c > 0:
        raise PotentialError(f"harmonic coupling must be positive, got {c}")
    return PotentialSpec("harmonic", (float(c),))


def quartic(a: float, b: float) -> PotentialSpec:
    return PotentialSpec("quartic", (float(a), float(b)))


def constant(v0: float) -> PotentialSpec:
    return PotentialSpec("constant", (float(v0),))


def tabulated(xs, values) -> PotentialSpec:
    xs = np.asarray(xs, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if xs.ndim != 1 or xs.shape != values.shape or len(xs) < 2:
        raise PotentialError("tabulated potential needs matching 1-D sample arrays of length >= 2")
    if np.any(np.diff(xs) <= 0):
        raise PotentialError("tabulated sample points must be strictly increasing")
    if not np.all(np.isfinite(values)):
        raise PotentialError("tabulated values must be finite")
    return PotentialSpec("tabulated", (), tuple(xs.tolist()), tuple(values.tolist()))
