"""Generating function F(s, t), its coefficients and the d_x recovery system."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from app.algebra.element import AlgebraError, d_generator, involution
from app.algebra.generating import (
    ResonantPhaseError,
    coefficient_A,
    generating_sum,
    phi_scalar,
    power_coefficient,
    recover_generator,
    system_determinant,
    tail_bound,
)
from app.algebra.theta import RationalTheta, RealTheta


def test_phi_scalar_values():
    assert phi_scalar(0.0, 1.3) == 1.0
    # phi(u, 2) = (1 - u^2)/(1 - u)^2 = (1 + u)/(1 - u)
    assert phi_scalar(0.5, 2.0) == pytest.approx(3.0)


@pytest.mark.parametrize("u, x", [(1.0, 0.0), (-1.2, 0.0), (0.5, 2.5)])
def test_phi_scalar_rejects_out_of_range(u, x):
    with pytest.raises(AlgebraError):
        phi_scalar(u, x)


def test_generating_sum_coefficients():
    theta = RealTheta(0.9)
    F = generating_sum(0.5, 0.25, theta, cutoff=6).element
    # delta_(m,n) collects the (m,n) and (-m,-n) terms of F
    assert F.coefficient((2, 1)) == pytest.approx(2 * 0.25 * 0.25 * complex(theta.half_phase(-2)))
    assert F.coefficient((0, 0)) == pytest.approx(2.0)


def test_tail_bound_dominates_truncation_error():
    theta = RationalTheta(1, 89)
    coarse = generating_sum(0.5, 0.5, theta, cutoff=10)
    fine = generating_sum(0.5, 0.5, theta, cutoff=40)
    assert (fine.element - coarse.element).l1_norm() <= coarse.tail_bound + 1e-12
    assert tail_bound(0.5, 0.5, 60) < 1e-15
    assert tail_bound(0.5, 0.5, 20) < tail_bound(0.5, 0.5, 10)


def test_generating_sum_rejects_bad_parameters():
    with pytest.raises(AlgebraError):
        generating_sum(1.0, 0.5, RealTheta(0.3), cutoff=5)
    with pytest.raises(AlgebraError):
        generating_sum(0.5, 0.5, RealTheta(0.3), cutoff=0)


def test_scalar_limit_of_generating_sum():
    # at theta = 0 the element evaluated at the character x -> 2cos(a m + b n) gives 2 phi(s, 2cos a) phi(t, 2cos b)
    theta = RealTheta(0.0)
    a, b, s, t = 0.4, 1.3, 0.3, 0.6
    F = generating_sum(s, t, theta, cutoff=60).element
    value = sum(c * math.cos(a * x.m + b * x.n) for x, c in F.coeffs.items()).real
    assert value == pytest.approx(2 * phi_scalar(s, 2 * math.cos(a)) * phi_scalar(t, 2 * math.cos(b)), rel=1e-12)


def test_coefficient_A_on_axis_is_four_d():
    theta = RationalTheta(1, 89)
    assert coefficient_A(0, 3, theta).max_deviation(4.0 * d_generator((0, 3), theta)) < 1e-15


def test_power_coefficient_on_axis_is_two_d():
    theta = RationalTheta(1, 89)
    assert power_coefficient(0, 3, theta).max_deviation(2.0 * d_generator((0, 3), theta)) < 1e-15
    assert power_coefficient(0, 0, theta).max_deviation(d_generator((0, 0), theta)) < 1e-15


def test_power_coefficient_off_axis_matches_A():
    theta = RealTheta(0.37)
    assert power_coefficient(2, 3, theta).max_deviation(coefficient_A(2, 3, theta)) < 1e-15


def test_power_coefficient_rejects_negative():
    with pytest.raises(AlgebraError):
        power_coefficient(-1, 2, RealTheta(0.1))


@given(st.integers(1, 8), st.integers(1, 8), st.sampled_from([RationalTheta(1, 89), RealTheta(0.7)]))
def test_recover_generator_roundtrip(p, q, theta):
    A = coefficient_A(p, q, theta)
    recovered = recover_generator(p, q, A, involution(A), theta)
    assert recovered.max_deviation(d_generator((p, q), theta)) <= 1e-12


def test_recover_on_axis():
    theta = RealTheta(0.2)
    A = coefficient_A(3, 0, theta)
    assert recover_generator(3, 0, A, involution(A), theta).max_deviation(d_generator((3, 0), theta)) < 1e-15


def test_resonant_phase_rejected_for_rational_theta():
    theta = RationalTheta(1, 4)
    A = coefficient_A(2, 1, theta)
    with pytest.raises(ResonantPhaseError, match="resonant phase"):
        recover_generator(2, 1, A, involution(A), theta)


def test_resonant_phase_rejected_for_real_theta():
    theta = RealTheta(math.pi)
    A = coefficient_A(1, 1, theta)
    with pytest.raises(ResonantPhaseError):
        recover_generator(1, 1, A, involution(A), theta)


def test_system_determinant():
    theta = RealTheta(0.3)
    assert system_determinant(2, 3, theta) == pytest.approx(-8j * math.sin(6 * 0.3))
