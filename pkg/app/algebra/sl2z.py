# dccr/app/algebra/sl2z.py
"""
Purpose: Unimodular automorphisms of Z+Z acting on l1(Z+Z, omega).

alpha(m, n) = (am + bn, cm + dn). omega(alpha x, alpha y) is omega(x, y) when
det alpha = +1 and omega(y, x) when det alpha = -1, so the action is a
*-automorphism or a *-anti-automorphism accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from app.algebra.element import AlgebraElement, AlgebraError
from app.algebra.theta import GroupPoint, PointLike, as_point


@dataclass(frozen=True)
class Sl2zMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise AlgebraError(f"Matrix [[{self.a}, {self.b}], [{self.c}, {self.d}]] is not unimodular (det={self.det})")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> Sl2zMatrix:
        return cls(1, 0, 0, 1)

    def apply(self, x: PointLike) -> GroupPoint:
        x = as_point(x)
        return GroupPoint(self.a * x.m + self.b * x.n, self.c * x.m + self.d * x.n)

    def compose(self, other: Sl2zMatrix) -> Sl2zMatrix:
        """Matrix product self * other (apply other first)."""
        return Sl2zMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def sl2z_act(alpha: Sl2zMatrix, f: AlgebraElement) -> AlgebraElement:
    """(alpha f)(alpha x) = f(x); a relabelling, so coefficients are moved, never recomputed."""
    moved = {alpha.apply(x): c for x, c in f.coeffs.items()}
    return AlgebraElement(theta=f.theta, coeffs=MappingProxyType(dict(sorted(moved.items()))))
