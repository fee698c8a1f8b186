# dccr/app/io/writers.py
"""
Purpose: Deterministic CSV/JSON output for run products.

Floats are written with repr-exact formatting ("%.17g") so identical inputs give
byte-identical files. Matrices go out as row-major `re,im` pairs, one row per line.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from app.algebra.element import AlgebraElement
from app.logging.logger import get_logger

logger = get_logger("io.writers")

FLOAT_FORMAT = "%.17g"


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % float(value)
    return str(value)


def render_csv(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return output.getvalue()


def write_csv(path: Path, headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    """Write a CSV file; returns the number of data rows."""
    rows = list(rows)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(headers, rows), encoding="utf-8")
    logger.debug("CSV written", extra={"file": str(path), "rows": len(rows), "columns": len(headers)})
    return len(rows)


def write_json(path: Path, payload: Dict[str, Any]) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    logger.debug("JSON written", extra={"file": str(path)})
    return 1


def matrix_rows(M: np.ndarray) -> List[List[float]]:
    M = np.asarray(M, dtype=np.complex128)
    return [[float(v) for z in row for v in (z.real, z.imag)] for row in M]


def write_matrix_csv(path: Path, M: np.ndarray) -> int:
    """Row-major `re,im` pairs; header re_0,im_0,...,re_{n-1},im_{n-1}."""
    M = np.asarray(M)
    headers = [f"{part}_{j}" for j in range(M.shape[1]) for part in ("re", "im")]
    return write_csv(path, headers, matrix_rows(M))


def read_matrix_csv(path: Path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        next(reader)
        values = np.array([[float(v) for v in row] for row in reader], dtype=np.float64)
    return values[:, 0::2] + 1j * values[:, 1::2]


def write_element_json(path: Path, f: AlgebraElement) -> int:
    return write_json(path, f.to_dict())


def read_element_json(path: Path) -> AlgebraElement:
    with open(path, "r", encoding="utf-8") as fh:
        return AlgebraElement.from_dict(json.load(fh))
