# dccr/app/spectra/eigen.py
"""
Purpose: Thin, checked wrappers over the scipy eigensolvers.

- eig_hermitian: ascending eigenvalues of a dense Hermitian matrix
- eigh_hermitian: (eigenvalues, eigenvectors)
- eig_banded_lowest: lowest eigenvalues of a real symmetric banded matrix in upper form
- distinct_levels: collapse clusters of (near-)degenerate eigenvalues
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from app.config.settings import get_settings
from app.logging.logger import get_logger

logger = get_logger("spectra.eigen")


class SpectrumError(ValueError):
    pass


def _check_hermitian(M: np.ndarray, tol: Optional[float]) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SpectrumError(f"eigensolver needs a square matrix, got shape {M.shape}")
    if tol is None:
        tol = get_settings().tolerances.hermitian_tolerance
    if M.size:
        scale = max(1.0, float(np.max(np.abs(M))))
        defect = float(np.max(np.abs(M - M.conj().T)))
        if defect > tol * scale:
            logger.warning("Non-Hermitian input rejected", extra={"defect": defect, "tolerance": tol})
            raise SpectrumError(f"matrix is not Hermitian (max |M - M*| = {defect:.3e})")
    return M


def eig_hermitian(M: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    M = _check_hermitian(M, tol)
    return scipy.linalg.eigvalsh(M)


def eigh_hermitian(M: np.ndarray, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    M = _check_hermitian(M, tol)
    return scipy.linalg.eigh(M)


def eig_banded_lowest(a_band: np.ndarray, count: int) -> np.ndarray:
    """Lowest `count` eigenvalues of the symmetric matrix stored in LAPACK upper band form."""
    a_band = np.asarray(a_band, dtype=np.float64)
    n = a_band.shape[1]
    if not 1 <= count <= n:
        raise SpectrumError(f"requested {count} eigenvalues of an order-{n} matrix")
    return scipy.linalg.eig_banded(
        a_band, lower=False, eigvals_only=True, select="i", select_range=(0, count - 1)
    )


def distinct_levels(eigenvalues: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Mean of each run of sorted eigenvalues whose neighbours differ by at most tol."""
    values = np.sort(np.asarray(eigenvalues, dtype=np.float64))
    if values.size == 0:
        return values
    breaks = np.flatnonzero(np.diff(values) > tol) + 1
    return np.array([chunk.mean() for chunk in np.split(values, breaks)])
