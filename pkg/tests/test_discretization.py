"""Periodic grid, discretized canonical operators, intertwiner, H_tau and the truncated grid."""

from __future__ import annotations

import math

import numpy as np
import pytest

from app.algebra.theta import RationalTheta, omega
from app.config.limits import NumericLimitError
from app.discretization.grid import (
    GridAlignmentError,
    GridError,
    build_grid,
    grid_d_op,
    grid_weyl,
    reflection,
    u_op,
    v_op,
)
from app.discretization.operators import (
    almost_mathieu_reduction,
    cosine_pair,
    hamiltonian,
    intertwiner,
    intertwiner_lambda,
    p_tau,
    q_tau,
)
from app.discretization.potentials import (
    PotentialError,
    constant,
    harmonic,
    quartic,
    tabulated,
)
from app.discretization.truncated import (
    build_truncated,
    dense_hamiltonian,
    oscillator_levels,
)
from app.representations.weyl import operator_norm
from app.spectra.eigen import distinct_levels, eig_hermitian


def corrected_level(n: int, tau: float) -> float:
    """(n + 1/2) - (tau^2/4)(2n^2 + 2n + 1): first-order effect of sin^2 in both x and p."""
    return (n + 0.5) - 0.25 * tau * tau * (2 * n * n + 2 * n + 1)


# ---------- grid ----------

def test_grid_parameters():
    grid = build_grid(16, 1, 1)
    assert grid.h == pytest.approx(math.sqrt(2 * math.pi / 16))
    assert grid.tau == pytest.approx(grid.h)
    assert grid.theta == RationalTheta(1, 16)
    assert grid.points[8] == 0.0


def test_theta_eff_is_reduced():
    assert build_grid(64, 2, 4).theta == RationalTheta(1, 8)


@pytest.mark.parametrize("args", [(15, 1, 1), (16, 0, 1), (16, 1, -2)])
def test_grid_rejects_bad_inputs(args):
    with pytest.raises(GridError):
        build_grid(*args)


def test_grid_respects_point_cap():
    with pytest.raises(NumericLimitError):
        build_grid(1 << 15, 1, 1)


def test_u_and_v_trivial_cases():
    grid = build_grid(32, 2, 1)
    np.testing.assert_allclose(u_op(grid, 0.0), np.eye(32))
    np.testing.assert_allclose(v_op(grid, grid.n_points * grid.h), np.eye(32))


def test_misaligned_shift_rejected():
    grid = build_grid(32, 2, 1)
    with pytest.raises(GridAlignmentError):
        v_op(grid, 0.5 * grid.h)
    with pytest.raises(GridAlignmentError):
        u_op(grid, 0.37)


@pytest.mark.parametrize("n_points, m_steps, k", [(64, 1, 1), (48, 2, 3), (128, 4, 1)])
def test_exact_grid_weyl_relation(n_points, m_steps, k):
    grid = build_grid(n_points, m_steps, k)
    tau = grid.tau
    for s_mult, t_mult in [(1, 1), (2, -1), (-3, 2)]:
        s, t = s_mult * tau, t_mult * tau
        lhs = v_op(grid, t) @ u_op(grid, s)
        rhs = np.exp(1j * s * t) * u_op(grid, s) @ v_op(grid, t)
        assert np.max(np.abs(lhs - rhs)) <= 1e-13


def test_grid_weyl_system(rng):
    grid = build_grid(64, 2, 1)
    for _ in range(20):
        x = tuple(int(v) for v in rng.integers(-6, 7, size=2))
        y = tuple(int(v) for v in rng.integers(-6, 7, size=2))
        lhs = grid_weyl(grid, x) @ grid_weyl(grid, y)
        rhs = omega(x, y, grid.theta) * grid_weyl(grid, (x[0] + y[0], x[1] + y[1]))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_grid_weyl_matches_u_v():
    grid = build_grid(32, 1, 1)
    tau = grid.tau
    expected = complex(grid.theta.half_phase(2 * 3)) * u_op(grid, 2 * tau) @ v_op(grid, 3 * tau)
    np.testing.assert_allclose(grid_weyl(grid, (2, 3)), expected, atol=1e-13)


@pytest.mark.parametrize("n_points, m_steps, k", [(16, 3, 5), (64, 7, 9), (32, 1, 31)])
def test_grid_weyl_phase_uses_true_tau_squared(n_points, m_steps, k):
    grid = build_grid(n_points, m_steps, k)
    tau = grid.tau
    for m, n in [(1, 1), (1, 3), (-3, 5), (2, -1)]:
        expected = np.exp(0.5j * tau * tau * m * n) * u_op(grid, m * tau) @ v_op(grid, n * tau)
        assert np.max(np.abs(grid_weyl(grid, (m, n)) - expected)) <= 1e-11


@pytest.mark.parametrize("args", [(16, 3, 8), (16, 1, 16), (32, 4, 8)])
def test_grid_rejects_theta_beyond_full_turn(args):
    with pytest.raises(GridError, match="k \\* m_steps must be < n_points"):
        build_grid(*args)


# ---------- canonical operators ----------

def test_sine_pair():
    grid = build_grid(64, 1, 1)
    Q, P = q_tau(grid), p_tau(grid)
    np.testing.assert_allclose(np.diag(Q).real, np.sin(grid.tau * grid.points) / grid.tau, atol=1e-12)
    assert abs(Q[32, 32]) < 1e-15
    np.testing.assert_allclose(Q, Q.conj().T, atol=1e-14)
    np.testing.assert_allclose(P, P.conj().T, atol=1e-14)
    assert operator_norm(Q) <= 1 / grid.tau + 1e-12
    assert operator_norm(P) <= 1 / grid.tau + 1e-12
    np.testing.assert_allclose(P @ np.ones(64), 0.0, atol=1e-12)


def test_cosine_pair_is_d_image():
    grid = build_grid(64, 1, 1)
    q_cos, _ = cosine_pair(grid)
    assert q_cos[32, 32] == pytest.approx(1 / grid.tau)
    D = 2 * grid.tau * q_cos
    np.testing.assert_allclose(D, grid_d_op(grid, (1, 0)), atol=1e-13)
    np.testing.assert_allclose(D @ D, grid_d_op(grid, (2, 0)) + 2 * np.eye(64), atol=1e-12)


def test_reflection_is_an_involution():
    grid = build_grid(16, 1, 1)
    R = reflection(grid)
    np.testing.assert_allclose(R @ R, np.eye(16))
    # x_0 = -Nh/2 is its own mirror image modulo the period
    np.testing.assert_allclose((R @ grid.points)[1:], -grid.points[1:], atol=1e-14)


# ---------- intertwiner ----------

@pytest.fixture(scope="module")
def big_grid():
    return build_grid(1024, 1, 1)


@pytest.fixture(scope="module")
def big_intertwiner(big_grid):
    return intertwiner(big_grid)


def test_lambda_phase(big_grid):
    lam = intertwiner_lambda(big_grid)
    assert np.exp(1j * lam * big_grid.tau) == pytest.approx(1j)


def test_intertwiner_is_unitary(big_intertwiner):
    W = big_intertwiner
    assert np.max(np.abs(W @ W.conj().T - np.eye(W.shape[0]))) <= 1e-10


@pytest.mark.parametrize("mult", [1, 3])
def test_intertwiner_flips_groups(big_grid, big_intertwiner, mult):
    W, Wh = big_intertwiner, big_intertwiner.conj().T
    lam = intertwiner_lambda(big_grid)
    s = mult * big_grid.tau
    assert np.max(np.abs(W @ u_op(big_grid, s) @ Wh - np.exp(1j * lam * s) * u_op(big_grid, -s))) <= 1e-10
    assert np.max(np.abs(W @ v_op(big_grid, s) @ Wh - np.exp(1j * lam * s) * v_op(big_grid, -s))) <= 1e-10


def test_intertwiner_maps_sine_to_cosine(big_grid, big_intertwiner):
    W, Wh = big_intertwiner, big_intertwiner.conj().T
    q_cos, p_cos = cosine_pair(big_grid)
    assert np.max(np.abs(W @ q_tau(big_grid) @ Wh - q_cos)) <= 1e-10
    assert np.max(np.abs(W @ p_tau(big_grid) @ Wh - p_cos)) <= 1e-10
    spectral = eig_hermitian(q_tau(big_grid)) - eig_hermitian(q_cos)
    assert np.max(np.abs(spectral)) <= 1e-10


@pytest.mark.parametrize("args", [(1026, 1, 1), (1024, 1, 3), (24, 8, 1)])
def test_intertwiner_alignment(args):
    with pytest.raises(GridAlignmentError, match="lambda not grid-aligned"):
        intertwiner(build_grid(*args))


# ---------- Hamiltonian ----------

def test_free_hamiltonian_range():
    grid = build_grid(128, 1, 1)
    values = eig_hermitian(hamiltonian(grid, constant(0.0)))
    assert values.min() >= -1e-12
    assert values.max() <= 1 / (2 * grid.tau ** 2) + 1e-9


def test_constant_potential_shifts_spectrum():
    grid = build_grid(64, 1, 1)
    base = eig_hermitian(hamiltonian(grid, constant(0.0)))
    shifted = eig_hermitian(hamiltonian(grid, constant(1.75)))
    np.testing.assert_allclose(shifted, base + 1.75, atol=1e-10)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_almost_mathieu_reduction(c):
    grid = build_grid(512, 1, 1)
    H = hamiltonian(grid, harmonic(c))
    red = almost_mathieu_reduction(grid, c)
    tau = grid.tau

    assert red.scale == pytest.approx(-1 / (8 * tau ** 2))
    assert red.offset == pytest.approx((1 + c) / (4 * tau ** 2))
    assert red.commutation_phase == pytest.approx(np.exp(4j * tau ** 2))

    affine = red.offset * np.eye(512) + red.scale * red.m2
    assert np.max(np.abs(H - affine)) <= 1e-12 / tau ** 2

    predicted = np.sort(red.offset + red.scale * eig_hermitian(red.m2))
    assert np.max(np.abs(eig_hermitian(H) - predicted)) <= 1e-9 * operator_norm(H)

    lhs = red.v_tilde @ red.u_tilde
    assert np.max(np.abs(lhs - red.commutation_phase * red.u_tilde @ red.v_tilde)) <= 1e-13


def test_reduction_rejects_non_harmonic():
    with pytest.raises(PotentialError):
        almost_mathieu_reduction(build_grid(16, 1, 1), quartic(1.0, 0.1))


# ---------- potentials ----------

def test_potentials():
    xs = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_allclose(harmonic(2.0)(xs), [1.0, 0.0, 4.0])
    np.testing.assert_allclose(quartic(2.0, 1.0)(xs), [2.0, 0.0, 20.0])
    table = tabulated([-1.0, 1.0], [3.0, 5.0])
    np.testing.assert_allclose(table([0.0, 5.0]), [4.0, 5.0])
    with pytest.raises(PotentialError):
        harmonic(0.0)
    with pytest.raises(PotentialError):
        tabulated([1.0, 0.0], [1.0, 2.0])


# ---------- truncated grid ----------

def test_truncated_grid_alignment():
    grid = build_truncated(4096, 12.0, 0.1)
    assert grid.substeps == 17
    assert grid.tau / grid.h == pytest.approx(17)
    assert grid.points[0] == pytest.approx(-grid.points[-1])


def test_truncated_banded_matches_dense():
    grid = build_truncated(200, 6.0, 0.3)
    v = harmonic(1.0)
    dense = eig_hermitian(dense_hamiltonian(grid, v).astype(complex))
    levels = oscillator_levels(grid, v, 3)
    # ten decoupled sublattices, so each level appears ten times
    assert np.max(np.abs(dense[:10] - dense[0])) <= 1e-6
    np.testing.assert_allclose(levels, distinct_levels(dense)[:3], atol=1e-8)


@pytest.mark.slow
def test_continuum_limit():
    v = harmonic(1.0)
    coarse = oscillator_levels(build_truncated(4096, 12.0, 0.1), v, 5)
    assert abs(coarse[0] - 0.5) <= 1e-2
    np.testing.assert_allclose(coarse, [corrected_level(n, 0.1) for n in range(5)], atol=1e-2)

    fine = oscillator_levels(build_truncated(4096, 12.0, 0.05), v, 1)
    assert abs(coarse[0] - 0.5) >= 3 * abs(fine[0] - 0.5)
