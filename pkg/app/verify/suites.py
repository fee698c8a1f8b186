# dccr/app/verify/suites.py
"""
Purpose: Identity suites behind `dccr verify`.

Each suite measures the largest deviation of one family of identities over a
seeded sample and compares it with a fixed tolerance. Suites never raise on a
failed identity; they report. The report lists every suite with its anchor
(the identity it checks), max deviation, tolerance and verdict.

corrupt_omega swaps omega(x, y) and omega(y, x) in the commutation-relation
right-hand side; the relation suites must then fail.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from app.algebra.ccr import ccr_rhs
from app.algebra.element import (
    AlgebraElement,
    convolve,
    d_generator,
    involution,
)
from app.algebra.generating import coefficient_A, generating_sum, recover_generator
from app.algebra.sl2z import sl2z_act
from app.algebra.theta import GroupPoint, RationalTheta, RealTheta, Theta, omega
from app.discretization.grid import build_grid, grid_weyl, u_op, v_op
from app.discretization.operators import (
    almost_mathieu_reduction,
    cosine_pair,
    hamiltonian,
    intertwiner,
    intertwiner_lambda,
    p_tau,
    q_tau,
)
from app.discretization.potentials import harmonic
from app.logging.logger import get_logger, log_suite_result
from app.representations.clock_shift import MatrixRep, clock_shift, parity
from app.representations.weyl import d_op, operator_norm, phi_operator, represent, weyl
from app.spectra.eigen import eig_hermitian
from app.verify.rng import make_rng, random_element, random_point, random_sl2z

logger = get_logger("verify.suites")


class SuiteFailure(Exception):
    """Raised by callers that turn a failing report into an exit status."""

    def __init__(self, suite: str, max_deviation: float, tolerance: float) -> None:
        super().__init__(f"identity suite failed: {suite} (max deviation {max_deviation:.3e} > {tolerance:.1e})")
        self.suite = suite


@dataclass(frozen=True)
class SuiteResult:
    name: str
    anchor: str
    max_deviation: float
    tolerance: float
    cases: int
    duration_ms: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_deviation)) and self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, object]:
        # timings go to the run manifest
        report = {k: v for k, v in asdict(self).items() if k != "duration_ms"}
        return {**report, "passed": self.passed}


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = 0
    corrupt_omega: bool = False
    intertwiner_points: int = 1024
    reduction_points: int = 512
    generating_q: int = 89
    generating_cutoff: int = 60


def _max_abs(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def _relation_rhs(x: GroupPoint, y: GroupPoint, theta: Theta, corrupt: bool) -> AlgebraElement:
    if not corrupt:
        return ccr_rhs(x, y, theta)
    return omega(y, x, theta) * d_generator(x + y, theta) + omega(x, y, theta) * d_generator(x - y, theta)


def _sample_reps(rng: np.random.Generator, count: int, q_max: int = 64, twisted: bool = True) -> List[MatrixRep]:
    reps = []
    while len(reps) < count:
        q = int(rng.integers(2, q_max + 1))
        p = int(rng.integers(1, q))
        if np.gcd(p, q) != 1:
            continue
        phi1, phi2 = (rng.uniform(0, 2 * np.pi, size=2) if twisted else (0.0, 0.0))
        reps.append(clock_shift(p, q, phi1, phi2))
    return reps


THETAS: List[Theta] = [
    RationalTheta(1, 5),
    RationalTheta(13, 34),
    RealTheta(0.7),
    RealTheta(float(np.sqrt(2.0))),
    RealTheta(float(np.pi * (np.sqrt(5.0) - 1.0))),
]


# ---------- Twisted algebra ----------

def suite_ccr_algebra(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for theta in THETAS:
        for _ in range(40):
            x, y = random_point(rng, 8), random_point(rng, 8)
            lhs = convolve(d_generator(x, theta), d_generator(y, theta))
            worst = max(worst, lhs.max_deviation(_relation_rhs(x, y, theta, options.corrupt_omega)))
    return worst


def suite_sl2z(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for theta in THETAS:
        for _ in range(10):
            alpha = random_sl2z(rng)
            f = random_element(rng, theta, 6, bound=4)
            g = random_element(rng, theta, 6, bound=4)
            lhs = sl2z_act(alpha, convolve(f, g))
            if alpha.det == 1:
                rhs = convolve(sl2z_act(alpha, f), sl2z_act(alpha, g))
            else:
                rhs = convolve(sl2z_act(alpha, g), sl2z_act(alpha, f))
            worst = max(worst, lhs.max_deviation(rhs))
            worst = max(worst, sl2z_act(alpha, involution(f)).max_deviation(involution(sl2z_act(alpha, f))))
    return worst


def suite_generating_roundtrip(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    thetas = [RationalTheta(1, options.generating_q), RealTheta(0.7)]
    for i in range(50):
        theta = thetas[i % 2]
        p, q = (int(v) for v in rng.integers(1, 9, size=2))
        A = coefficient_A(p, q, theta)
        recovered = recover_generator(p, q, A, involution(A), theta)
        worst = max(worst, recovered.max_deviation(d_generator((p, q), theta)))
    return worst


# ---------- Representations ----------

def suite_ccr_matrix(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for rep in _sample_reps(rng, 50):
        x, y = random_point(rng, 8), random_point(rng, 8)
        rhs = represent(_relation_rhs(x, y, rep.theta, options.corrupt_omega), rep)
        worst = max(worst, _max_abs(d_op(rep, x) @ d_op(rep, y) - rhs))
    return worst


def suite_d_properties(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for rep in _sample_reps(rng, 30):
        worst = max(worst, _max_abs(d_op(rep, (0, 0)) - 2.0 * np.eye(rep.dim)))
        x = random_point(rng, 8)
        D = d_op(rep, x)
        worst = max(worst, _max_abs(d_op(rep, -x) - D))
        worst = max(worst, _max_abs(D - D.conj().T))
        worst = max(worst, operator_norm(D) - 2.0)
    return worst


def suite_homomorphism(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    qs = (5, 13, 34, 64)
    for i in range(100):
        q = qs[i % len(qs)]
        rep = clock_shift(1, q, *rng.uniform(0, 2 * np.pi, size=2))
        f = random_element(rng, rep.theta, int(rng.integers(1, 11)))
        g = random_element(rng, rep.theta, int(rng.integers(1, 11)))
        product = represent(f, rep) @ represent(g, rep)
        deviation = _max_abs(represent(convolve(f, g), rep) - product)
        worst = max(worst, deviation / max(1.0, _max_abs(product)))
    return worst


def suite_weyl(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for rep in _sample_reps(rng, 50):
        x, y = random_point(rng, 8), random_point(rng, 8)
        rhs = omega(x, y, rep.theta) * weyl(rep, x + y)
        worst = max(worst, _max_abs(weyl(rep, x) @ weyl(rep, y) - rhs))
    return worst


def suite_parity(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for rep in _sample_reps(rng, 30, twisted=False):
        J = parity(rep)
        x = random_point(rng, 8)
        worst = max(worst, _max_abs(J @ weyl(rep, x) @ J.conj().T - weyl(rep, -x)))
    return worst


def suite_trace(rng: np.random.Generator, options: SuiteOptions) -> float:
    worst = 0.0
    for rep in _sample_reps(rng, 30, twisted=False):
        x = random_point(rng, 8)
        if x.m % rep.q == 0 and x.n % rep.q == 0:
            continue
        worst = max(worst, abs(np.trace(weyl(rep, x))) / rep.dim)
    return worst


GENERATING_S = GENERATING_T = 0.5


def generating_element(options: SuiteOptions) -> AlgebraElement:
    """Truncated F(s, t) checked by the generating suite, at theta = 2 pi / generating_q."""
    theta = RationalTheta(1, options.generating_q)
    return generating_sum(GENERATING_S, GENERATING_T, theta, options.generating_cutoff).element


def suite_generating(rng: np.random.Generator, options: SuiteOptions) -> float:
    rep = clock_shift(1, options.generating_q)
    F = generating_element(options)
    expected = 2.0 * phi_operator(GENERATING_S, d_op(rep, (1, 0))) @ phi_operator(GENERATING_T, d_op(rep, (0, 1)))
    return operator_norm(represent(F, rep) - expected)


# ---------- Discretization ----------

def suite_grid_weyl(rng: np.random.Generator, options: SuiteOptions) -> float:
    grid = build_grid(64, 2, 1)
    worst = 0.0
    for _ in range(20):
        x, y = random_point(rng, 6), random_point(rng, 6)
        rhs = omega(x, y, grid.theta) * grid_weyl(grid, x + y)
        worst = max(worst, _max_abs(grid_weyl(grid, x) @ grid_weyl(grid, y) - rhs))
    tau = grid.tau
    commuted = v_op(grid, tau) @ u_op(grid, tau) - np.exp(1j * tau * tau) * u_op(grid, tau) @ v_op(grid, tau)
    return max(worst, _max_abs(commuted))


def suite_intertwiner(rng: np.random.Generator, options: SuiteOptions) -> float:
    grid = build_grid(options.intertwiner_points, 1, 1)
    tau = grid.tau
    lam = intertwiner_lambda(grid)
    W = intertwiner(grid)
    Wh = W.conj().T
    q_cos, p_cos = cosine_pair(grid)
    q_sin = q_tau(grid)
    checks = [
        W @ Wh - np.eye(grid.dim),
        W @ u_op(grid, tau) @ Wh - np.exp(1j * lam * tau) * u_op(grid, -tau),
        W @ v_op(grid, tau) @ Wh - np.exp(1j * lam * tau) * v_op(grid, -tau),
        W @ q_sin @ Wh - q_cos,
        W @ p_tau(grid) @ Wh - p_cos,
    ]
    worst = max(_max_abs(c) for c in checks)
    spectral = eig_hermitian(q_sin) - eig_hermitian(q_cos)
    return max(worst, _max_abs(spectral))


def suite_affine_reduction(rng: np.random.Generator, options: SuiteOptions) -> float:
    grid = build_grid(options.reduction_points, 1, 1)
    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        H = hamiltonian(grid, harmonic(c))
        red = almost_mathieu_reduction(grid, c)
        scale = operator_norm(H)
        predicted = np.sort(red.offset + red.scale * eig_hermitian(red.m2))
        worst = max(worst, _max_abs(eig_hermitian(H) - predicted) / scale)
        phase_defect = red.v_tilde @ red.u_tilde - red.commutation_phase * red.u_tilde @ red.v_tilde
        worst = max(worst, _max_abs(phase_defect))
    return worst


@dataclass(frozen=True)
class SuiteDef:
    name: str
    anchor: str
    tolerance: float
    run: Callable[[np.random.Generator, SuiteOptions], float]
    cases: int


SUITES: List[SuiteDef] = [
    SuiteDef("ccr_algebra", "d_x * d_y = omega(x,y) d_(x+y) + omega(y,x) d_(x-y) in l1(Z+Z, omega)",
             1e-13, suite_ccr_algebra, 200),
    SuiteDef("ccr_matrix", "D_x D_y = omega(x,y) D_(x+y) + omega(y,x) D_(x-y) on clock/shift reps, q <= 64",
             1e-12, suite_ccr_matrix, 50),
    SuiteDef("d_properties", "D_0 = 2I, D_(-x) = D_x, D_x Hermitian, ||D_x|| <= 2",
             1e-9, suite_d_properties, 30),
    SuiteDef("homomorphism", "pi(f) pi(g) = pi(f * g)",
             1e-10, suite_homomorphism, 100),
    SuiteDef("weyl", "W_x W_y = omega(x,y) W_(x+y)",
             1e-12, suite_weyl, 50),
    SuiteDef("parity", "J W_x J* = W_(-x) on untwisted reps",
             1e-12, suite_parity, 30),
    SuiteDef("trace", "tr(W_x)/q = 0 for x != 0 mod q",
             1e-12, suite_trace, 30),
    SuiteDef("sl2z", "alpha(f * g) = alpha(f) * alpha(g) (det +1), alpha(g) * alpha(f) (det -1), alpha(f*) = alpha(f)* for alpha in GL(2,Z)",
             1e-13, suite_sl2z, 50),
    SuiteDef("generating", "sum s^|m| t^|n| e^(-imn theta/2) D_(m,n) = 2 phi(s, D_(1,0)) phi(t, D_(0,1))",
             1e-8, suite_generating, 1),
    SuiteDef("generating_roundtrip", "d_(p,q) recovered from A_pq and A_pq*",
             1e-12, suite_generating_roundtrip, 50),
    SuiteDef("grid_weyl", "V_t U_s = e^(ist) U_s V_t on the periodic grid",
             1e-12, suite_grid_weyl, 21),
    SuiteDef("intertwiner", "W U_s W* = e^(i lambda s) U_(-s), W V_t W* = e^(i lambda t) V_(-t), W = R U_(-lambda) V_lambda",
             1e-10, suite_intertwiner, 6),
    SuiteDef("affine_reduction", "H_tau = mu I + lambda_aff M2, V~U~ = e^(4i tau^2) U~V~",
             1e-9, suite_affine_reduction, 3),
]


def run_all(options: Optional[SuiteOptions] = None) -> List[SuiteResult]:
    """Run every suite in order; suite i draws from its own Philox stream keyed by (seed, i)."""
    options = options or SuiteOptions()
    results = []
    for index, suite in enumerate(SUITES):
        rng = make_rng([options.seed, index])
        start = time.time()
        deviation = float(suite.run(rng, options))
        result = SuiteResult(
            name=suite.name,
            anchor=suite.anchor,
            max_deviation=deviation,
            tolerance=suite.tolerance,
            cases=suite.cases,
            duration_ms=(time.time() - start) * 1000,
        )
        log_suite_result(
            logger, result.name, result.anchor, result.max_deviation,
            result.tolerance, result.passed, result.cases, result.duration_ms,
        )
        results.append(result)
    return results


def first_failure(results: List[SuiteResult]) -> Optional[SuiteResult]:
    return next((r for r in results if not r.passed), None)
