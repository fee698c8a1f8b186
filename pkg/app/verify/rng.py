# dccr/app/verify/rng.py
"""
Purpose: The single seeded generator behind every randomized suite.

Philox4x64-10 (counter-based, 64-bit words, 10 rounds) through numpy's
Generator interface; the same seed gives the same stream on every platform.
"""

from __future__ import annotations

from typing import List, Sequence, Union

import numpy as np

from app.algebra.element import AlgebraElement
from app.algebra.sl2z import Sl2zMatrix
from app.algebra.theta import GroupPoint, Theta

RNG_ALGORITHM = "Philox4x64-10"


def make_rng(seed: Union[int, Sequence[int]]) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_point(rng: np.random.Generator, bound: int) -> GroupPoint:
    m, n = rng.integers(-bound, bound + 1, size=2)
    return GroupPoint(int(m), int(n))


def random_element(rng: np.random.Generator, theta: Theta, support: int, bound: int = 8) -> AlgebraElement:
    terms = []
    for _ in range(support):
        c = complex(rng.standard_normal(), rng.standard_normal())
        terms.append((random_point(rng, bound), c))
    return AlgebraElement.from_terms(theta, terms)


def random_sl2z(rng: np.random.Generator, length: int = 6) -> Sl2zMatrix:
    """Word in S = [[0,-1],[1,0]], T^{+-1} = [[1,+-1],[0,1]] and R = [[1,0],[0,-1]]; det is +-1."""
    letters: List[Sl2zMatrix] = [
        Sl2zMatrix(0, -1, 1, 0), Sl2zMatrix(1, 1, 0, 1), Sl2zMatrix(1, -1, 0, 1), Sl2zMatrix(1, 0, 0, -1),
    ]
    alpha = Sl2zMatrix.identity()
    for index in rng.integers(0, len(letters), size=length):
        alpha = alpha.compose(letters[int(index)])
    return alpha
