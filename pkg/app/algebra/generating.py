# dccr/app/algebra/generating.py
"""
Purpose: Generating-function combinatorics for the symmetric generators d_x.

F(s, t) = sum_{m,n} s^{|m|} t^{|n|} e^{-imn theta/2} d_{(m,n)} equals 2 phi(s, q) phi(t, p)
with q = d_(1,0), p = d_(0,1) and phi(u, x) = (1 - u^2) / (1 + u^2 - u x).

- generating_sum: truncated F with its exact l1 truncation error
- coefficient_A: A_pq = 2 e^{-ipq theta/2} d_(p,q) + 2 e^{ipq theta/2} d_(-p,q)
- power_coefficient: the true coefficient of s^p t^q (differs from A_pq on the axes)
- recover_generator: solve the 2x2 system in A_pq, A_pq^* for d_(p,q)
"""

from __future__ import annotations

from dataclasses import dataclass

from app.algebra.element import AlgebraElement, AlgebraError, d_generator
from app.algebra.theta import GroupPoint, RationalTheta, Theta
from app.config.settings import get_settings
from app.logging.logger import get_logger

logger = get_logger("algebra.generating")


class ResonantPhaseError(AlgebraError):
    pass


@dataclass(frozen=True)
class GeneratingSum:
    element: AlgebraElement
    tail_bound: float
    cutoff: int
    s: float
    t: float


def _check_unit_interval(name: str, u: float) -> None:
    if not abs(u) < 1.0:
        raise AlgebraError(f"{name} must satisfy |{name}| < 1, got {u}")


def phi_scalar(u: float, x: float) -> float:
    """phi(u, x) = (1 - u^2) / (1 + u^2 - u x) for |u| < 1, |x| <= 2."""
    _check_unit_interval("u", u)
    if abs(x) > 2.0 + 1e-12:
        raise AlgebraError(f"x must lie in [-2, 2], got {x}")
    return (1.0 - u * u) / (1.0 + u * u - u * x)


def _two_sided_partial(a: float, cutoff: int) -> float:
    """sum_{|m| <= cutoff} a^{|m|} for 0 <= a < 1."""
    if a == 0.0:
        return 1.0
    return 1.0 + 2.0 * a * (1.0 - a ** cutoff) / (1.0 - a)


def _two_sided_tail(a: float, cutoff: int) -> float:
    """sum_{|m| > cutoff} a^{|m|}."""
    return 2.0 * a ** (cutoff + 1) / (1.0 - a)


def tail_bound(s: float, t: float, cutoff: int) -> float:
    """l1 norm of F(s, t) minus its truncation to |m|, |n| <= cutoff."""
    a, b = abs(s), abs(t)
    full_b = (1.0 + b) / (1.0 - b)
    return 2.0 * (
        _two_sided_partial(a, cutoff) * _two_sided_tail(b, cutoff)
        + _two_sided_tail(a, cutoff) * full_b
    )


def generating_sum(s: float, t: float, theta: Theta, cutoff: int) -> GeneratingSum:
    """
    Truncated F(s, t) over |m|, |n| <= cutoff.

    delta_(m,n) collects the (m, n) and (-m, -n) terms, so its coefficient is
    2 s^{|m|} t^{|n|} e^{-imn theta/2}.
    """
    _check_unit_interval("s", s)
    _check_unit_interval("t", t)
    if cutoff < 1:
        raise AlgebraError(f"cutoff must be >= 1, got {cutoff}")

    terms = []
    for m in range(-cutoff, cutoff + 1):
        sm = s ** abs(m)
        for n in range(-cutoff, cutoff + 1):
            weight = 2.0 * sm * t ** abs(n)
            if weight == 0.0:
                continue
            terms.append((GroupPoint(m, n), weight * complex(theta.half_phase(-m * n))))

    result = GeneratingSum(
        element=AlgebraElement.from_terms(theta, terms),
        tail_bound=tail_bound(s, t, cutoff),
        cutoff=cutoff,
        s=s,
        t=t,
    )
    logger.debug("Generating sum built", extra={
        "s": s, "t": t, "cutoff": cutoff, "support": len(result.element), "tail_bound": result.tail_bound
    })
    return result


def coefficient_A(p: int, q: int, theta: Theta) -> AlgebraElement:
    """A_pq = 2 e^{-ipq theta/2} d_(p,q) + 2 e^{ipq theta/2} d_(-p,q)."""
    a = complex(theta.half_phase(-p * q))
    return 2.0 * a * d_generator((p, q), theta) + 2.0 * a.conjugate() * d_generator((-p, q), theta)


def power_coefficient(p: int, q: int, theta: Theta) -> AlgebraElement:
    """Coefficient of s^p t^q in F: sum over the distinct points (+-p, +-q)."""
    if p < 0 or q < 0:
        raise AlgebraError(f"power indices must be nonnegative, got ({p}, {q})")
    points = {(sp * p, sq * q) for sp in (1, -1) for sq in (1, -1)}
    total = AlgebraElement.zero(theta)
    for m, n in sorted(points):
        total = total + complex(theta.half_phase(-m * n)) * d_generator((m, n), theta)
    return total


def system_determinant(p: int, q: int, theta: Theta) -> complex:
    """4 (e^{-ipq theta} - e^{ipq theta}) = -8i sin(pq theta)."""
    a2 = complex(theta.half_phase(-2 * p * q))
    return 4.0 * (a2 - a2.conjugate())


def _is_resonant(k: int, theta: Theta) -> bool:
    if isinstance(theta, RationalTheta):
        return theta.resonant(k)
    return theta.resonant(k, get_settings().tolerances.resonance_threshold)


def recover_generator(
    p: int,
    q: int,
    A: AlgebraElement,
    Astar: AlgebraElement,
    theta: Theta,
) -> AlgebraElement:
    """
    Solve A = 2a d1 + 2conj(a) d2, A^* = 2conj(a) d1 + 2a d2 for d1 = d_(p,q), a = e^{-ipq theta/2}.

    On the axes (pq = 0) A_pq = 4 d_(p,q) and the system is not needed.
    """
    if p * q == 0:
        return A / 4.0
    if _is_resonant(p * q, theta):
        logger.warning("Resonant phase in operator system", extra={"p": p, "q": q, "theta": theta.describe()})
        raise ResonantPhaseError(f"resonant phase: sin({p}*{q}*theta) vanishes, determinant is singular")

    a = complex(theta.half_phase(-p * q))
    det = system_determinant(p, q, theta)
    return (2.0 * a / det) * A - (2.0 * a.conjugate() / det) * Astar
