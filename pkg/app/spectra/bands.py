# dccr/app/spectra/bands.py
"""
Purpose: Band spectra of the almost Mathieu operator M = U + U* + c(V + V*) at rational flux.

At theta = 2 pi p / q the spectrum of M in the rotation algebra is the union over
twist phases (phi1, phi2) of the spectra of the q x q clock/shift realizations.
Conjugating by V (or U) moves a twist by 2 pi / q, so one period [0, 2 pi / q]
per phase already sweeps every band. Bands are sampled on a uniform lattice with
endpoints included, which gives an inner approximation of each band.

- almost_mathieu: dense M for one twist
- band_spectrum: phase sweep, band intervals and the measure of their union
- butterfly: every reduced p/q with q <= q_max, parallel, deterministic order
- measure_trend: measures along golden-ratio approximants
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.config.limits import NumericLimitsEnforcer
from app.config.settings import get_settings
from app.logging.logger import get_logger, log_sweep_complete
from app.representations.clock_shift import clock_shift
from app.spectra.eigen import SpectrumError

logger = get_logger("spectra.bands")

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class BandSpectrum:
    p: int
    q: int
    c: float
    n_phase: int
    eigen_grid: np.ndarray  # (n_phase, n_phase, q), ascending along the last axis
    bands: np.ndarray  # (q, 2) rows [lo, hi]

    @property
    def measure(self) -> float:
        return union_measure(self.bands)

    @property
    def flux(self) -> float:
        return self.p / self.q

    def rows(self) -> Iterator[Tuple[int, int, float, float, float]]:
        for lo, hi in self.bands:
            yield self.p, self.q, self.flux, float(lo), float(hi)


def almost_mathieu(p: int, q: int, c: float, phi1: float = 0.0, phi2: float = 0.0) -> np.ndarray:
    rep = clock_shift(p, q, phi1, phi2)
    U, V = rep.U, rep.V
    return U + U.conj().T + c * (V + V.conj().T)


def union_measure(bands: np.ndarray) -> float:
    """Total length of a union of closed intervals."""
    bands = np.asarray(bands, dtype=np.float64).reshape(-1, 2)
    if bands.shape[0] == 0:
        return 0.0
    ordered = bands[np.argsort(bands[:, 0], kind="stable")]
    total = 0.0
    lo, hi = ordered[0]
    for a, b in ordered[1:]:
        if a > hi:
            total += hi - lo
            lo, hi = a, b
        else:
            hi = max(hi, b)
    total += hi - lo
    return float(total)


def _check_band_inputs(p: int, q: int, c: float, n_phase: int) -> None:
    if q < 1:
        raise SpectrumError(f"q must be >= 1, got {q}")
    if math.gcd(p, q) != 1:
        raise SpectrumError(f"p={p} and q={q} are not coprime")
    if c < 0:
        raise SpectrumError(f"coupling c must be >= 0, got {c}")
    if n_phase < 2:
        raise SpectrumError(f"n_phase must be >= 2, got {n_phase}")
    enforcer = NumericLimitsEnforcer()
    enforcer.check_dense_dim(q, "band spectrum")
    enforcer.check_phase_lattice(n_phase)


def band_spectrum(p: int, q: int, c: float, n_phase: int = 16) -> BandSpectrum:
    """
    Sweep M over the n_phase x n_phase lattice on [0, 2 pi / q]^2.

    M(phi1, phi2) = diag(2 cos(phi1 + theta j)) + c (e^{i phi2} S + e^{-i phi2} S^T),
    S the cyclic shift, eigensolved one phi1 row at a time as a batch.
    """
    _check_band_inputs(p, q, c, n_phase)

    rep = clock_shift(p, q)
    clock = np.diag(rep.U).copy()
    shift = rep.V
    phases = np.linspace(0.0, 2.0 * math.pi / q, n_phase)

    twist2 = np.exp(1j * phases)[:, None, None]
    hop = c * (twist2 * shift + twist2.conj() * shift.T)
    eigen_grid = np.empty((n_phase, n_phase, q), dtype=np.float64)
    diag_idx = np.arange(q)
    for i, phi1 in enumerate(phases):
        batch = hop.copy()
        batch[:, diag_idx, diag_idx] += 2.0 * np.real(clock * np.exp(1j * phi1))
        eigen_grid[i] = np.linalg.eigvalsh(batch)

    flat = eigen_grid.reshape(-1, q)
    bands = np.stack([flat.min(axis=0), flat.max(axis=0)], axis=1)
    spectrum = BandSpectrum(p=p, q=q, c=float(c), n_phase=n_phase, eigen_grid=eigen_grid, bands=bands)
    logger.debug("Band spectrum computed", extra={
        "p": p, "q": q, "c": c, "n_phase": n_phase, "measure": spectrum.measure
    })
    return spectrum


def reduced_fractions(q_max: int) -> List[Tuple[int, int]]:
    """Every reduced p/q in [0, 1) with q <= q_max, ordered by q then p."""
    return [(p, q) for q in range(1, q_max + 1) for p in range(q) if math.gcd(p, q) == 1]


def butterfly(
    q_max: int,
    c: float,
    n_phase: int = 16,
    workers: Optional[int] = None,
) -> List[BandSpectrum]:
    if q_max < 2:
        raise SpectrumError(f"q_max must be >= 2, got {q_max}")
    NumericLimitsEnforcer().check_butterfly_q(q_max)

    start = time.time()
    fractions = reduced_fractions(q_max)
    workers = workers or get_settings().worker_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        spectra = list(pool.map(lambda pq: band_spectrum(pq[0], pq[1], c, n_phase), fractions))

    log_sweep_complete(
        logger,
        kind="butterfly",
        spectra=len(spectra),
        n_phase=n_phase,
        coupling=c,
        workers=workers,
        total_duration_ms=(time.time() - start) * 1000,
        extra_fields={"q_max": q_max, "rows": sum(s.q for s in spectra)},
    )
    return spectra


def golden_fraction(q: int) -> Tuple[int, int]:
    """Nearest p/q to the golden mean, reduced."""
    if q < 1:
        raise SpectrumError(f"q must be >= 1, got {q}")
    p = round(q * GOLDEN)
    g = math.gcd(p, q)
    return p // g, q // g


def measure_trend(
    c: float,
    q_list: Sequence[int],
    n_phase: int = 16,
    workers: Optional[int] = None,
) -> List[Tuple[int, int, float]]:
    """(p, q, measure) at the golden-ratio approximant for each requested denominator."""
    start = time.time()
    fractions = [golden_fraction(q) for q in q_list]
    workers = workers or get_settings().worker_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        spectra = list(pool.map(lambda pq: band_spectrum(pq[0], pq[1], c, n_phase), fractions))

    trend = [(s.p, s.q, s.measure) for s in spectra]
    measures = [m for _, _, m in trend]
    log_sweep_complete(
        logger,
        kind="measure_trend",
        spectra=len(spectra),
        n_phase=n_phase,
        coupling=c,
        workers=workers,
        total_duration_ms=(time.time() - start) * 1000,
        extra_fields={
            "q_list": list(q_list),
            "monotone_decreasing": all(a >= b for a, b in zip(measures, measures[1:])),
        },
    )
    return trend
