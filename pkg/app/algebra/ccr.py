# dccr/app/algebra/ccr.py
"""
Purpose: Right-hand sides of the discretized canonical commutation relations.

D_x D_y = omega(x, y) D_{x+y} + omega(y, x) D_{x-y}
"""

from __future__ import annotations

import math
from typing import Callable

from app.algebra.element import AlgebraElement, d_generator
from app.algebra.theta import PointLike, Theta, as_point, omega


def ccr_rhs(x: PointLike, y: PointLike, theta: Theta) -> AlgebraElement:
    """omega(x, y) d_{x+y} + omega(y, x) d_{x-y}."""
    x, y = as_point(x), as_point(y)
    return omega(x, y, theta) * d_generator(x + y, theta) + omega(y, x, theta) * d_generator(x - y, theta)


def scalar_ccr_family(alpha: float, beta: float) -> Callable[[PointLike], float]:
    """
    D(m, n) = 2 cos(alpha m + beta n).

    Solves the relations for the trivial cocycle; 2cosA cosB = cos(A+B) + cos(A-B)
    is the untwisted case.
    """
    def evaluate(x: PointLike) -> float:
        x = as_point(x)
        return 2.0 * math.cos(alpha * x.m + beta * x.n)

    return evaluate
