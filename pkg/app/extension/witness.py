# dccr/app/extension/witness.py
"""
Purpose: Polynomial certificates that point evaluation inside the gap of X = [-2,-1] u [1,2]
does not extend to a positive functional on C(X).

u(x) = (2x^2 - 5)/3 maps X onto [-1, 1], so p_n = T_n(u) has sup-norm 1 on X,
while for |lambda| < 1 the value u(lambda) < -1 makes |p_n(lambda)| grow like
rho^n / 2 with rho = |u| + sqrt(u^2 - 1).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import List

import numpy as np
from numpy.polynomial import chebyshev

from app.logging.logger import get_logger

logger = get_logger("extension.witness")

INTERPRETATION = (
    "a positive extension of point evaluation to C(X) would force "
    "|p_n(lambda)| <= sup_X |p_n| for every n; ratio > 1 violates it"
)


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessReport:
    lambda_: float
    degree: int
    sup_X: float
    value_at_lambda: float
    ratio: float
    growth_base: float

    def as_row(self) -> dict:
        return {"n": self.degree, "sup_X": self.sup_X, "value": self.value_at_lambda, "ratio": self.ratio}

    def to_dict(self) -> dict:
        return asdict(self)


def u_map(x):
    x = np.asarray(x, dtype=np.float64)
    return (2.0 * x * x - 5.0) / 3.0


def _check(n: int, lam: float) -> None:
    if n < 1:
        raise WitnessError(f"degree must be >= 1, got {n}")
    if not abs(lam) < 1.0:
        raise WitnessError(f"lambda must lie in (-1, 1), got {lam}; u(lambda) is inside [-1, 1] there")


def chebyshev_recurrence(u: float, n: int) -> np.ndarray:
    """T_0(u), ..., T_n(u) by T_{k+1} = 2u T_k - T_{k-1}."""
    values = np.empty(n + 1, dtype=np.float64)
    values[0] = 1.0
    if n >= 1:
        values[1] = u
    for k in range(1, n):
        values[k + 1] = 2.0 * u * values[k] - values[k - 1]
    return values


def chebyshev_closed_form(u: float, n: int) -> float:
    """T_n(u) for |u| >= 1 via cosh(n arccosh |u|), signed by parity."""
    value = math.cosh(n * math.acosh(abs(u)))
    return value if u >= 0 or n % 2 == 0 else -value


def growth_rate(lam: float) -> float:
    """rho(lambda) = |u| + sqrt(u^2 - 1) at u = u(lambda)."""
    if not abs(lam) < 1.0:
        raise WitnessError(f"lambda must lie in (-1, 1), got {lam}")
    u = float(u_map(lam))
    return abs(u) + math.sqrt(u * u - 1.0)


def sample_X(n_samples: int) -> np.ndarray:
    """n_samples points covering both components of X, endpoints included."""
    half = max(2, n_samples // 2)
    right = np.linspace(1.0, 2.0, half)
    return np.concatenate([-right[::-1], right])


def _sup_on_X(n: int, xs: np.ndarray) -> float:
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return float(np.max(np.abs(chebyshev.chebval(u_map(xs), coeffs))))


def chebyshev_witness(n: int, lam: float, n_samples: int = 10_000) -> WitnessReport:
    _check(n, lam)
    sup_X = _sup_on_X(n, sample_X(n_samples))
    path = chebyshev_recurrence(float(u_map(lam)), n)
    value = float(path[n])
    previous = float(path[n - 1])
    return WitnessReport(
        lambda_=lam,
        degree=n,
        sup_X=sup_X,
        value_at_lambda=value,
        ratio=abs(value) / sup_X,
        growth_base=abs(value / previous),
    )


def extension_gap_report(lam: float, n_max: int, n_samples: int = 10_000) -> List[WitnessReport]:
    _check(n_max, lam)
    xs = sample_X(n_samples)
    path = chebyshev_recurrence(float(u_map(lam)), n_max)
    reports = []
    for n in range(1, n_max + 1):
        sup_X = _sup_on_X(n, xs)
        reports.append(WitnessReport(
            lambda_=lam,
            degree=n,
            sup_X=sup_X,
            value_at_lambda=float(path[n]),
            ratio=abs(float(path[n])) / sup_X,
            growth_base=abs(float(path[n]) / float(path[n - 1])),
        ))
    logger.info("Extension gap report", extra={
        "lambda": lam,
        "n_max": n_max,
        "rho": growth_rate(lam),
        "final_ratio": reports[-1].ratio,
        "interpretation": INTERPRETATION,
    })
    return reports
