# dccr/app/main.py
"""
Main orchestration for the discretized-CCR workbench.

One run_* entry point per CLI subcommand:
- run_verify: identity suites -> verify_report.json, generating_element.json
- run_spectrum: band spectrum at one p/q -> bands.csv, measures.csv (+ matrix.csv)
- run_butterfly: all reduced p/q <= q_max -> butterfly.csv, measures.csv
- run_oscillator: H_tau levels (periodic or truncated grid) -> eigenvalues.csv
- run_witness: extension-gap table -> witness.csv, witness_summary.json

Every run writes run_manifest.json (config echo, timings, per-file row counts)
next to its outputs. Runners finish all computation before the first write, so a
run that fails a precondition leaves no data files behind. Data files are
byte-identical for identical configs; only the manifest carries timestamps.
"""

from __future__ import annotations

import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict

from app.cli.config import RunConfig
from app.config.limits import NumericLimitsEnforcer
from app.config.settings import get_settings
from app.discretization.grid import build_grid
from app.discretization.operators import hamiltonian
from app.discretization.truncated import build_truncated, oscillator_levels
from app.extension.witness import INTERPRETATION, extension_gap_report, growth_rate
from app.io.writers import write_csv, write_element_json, write_json, write_matrix_csv
from app.logging.logger import get_logger, log_run_complete
from app.spectra.bands import almost_mathieu, band_spectrum, butterfly, measure_trend
from app.spectra.eigen import distinct_levels, eig_hermitian
from app.verify.rng import RNG_ALGORITHM
from app.verify.suites import SuiteFailure, SuiteOptions, first_failure, generating_element, run_all

_logger = get_logger("main")

BAND_HEADERS = ["p", "q", "flux", "band_lo", "band_hi"]
MEASURE_HEADERS = ["p", "q", "c", "measure"]
OSCILLATOR_HEADERS = ["index", "value"]
WITNESS_HEADERS = ["n", "sup_X", "value", "ratio"]


def _write_manifest(
    config: RunConfig,
    out_dir: Path,
    files: Dict[str, int],
    start_time: float,
    exit_code: int,
    summary: Dict[str, Any],
) -> Dict[str, Any]:
    settings = get_settings()
    manifest = {
        "subcommand": config.subcommand,
        "version": settings.version,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "processing_time": {
            "start_time": datetime.fromtimestamp(start_time, timezone.utc).isoformat(),
            "duration_seconds": round(time.time() - start_time, 3),
        },
        "config": config.echo(),
        "rng": RNG_ALGORITHM,
        "workers": settings.worker_count(),
        "files": files,
        "summary": summary,
        "exit_code": exit_code,
    }
    write_json(out_dir / "run_manifest.json", manifest)
    log_run_complete(_logger, config.subcommand, str(out_dir), files, exit_code,
                     (time.time() - start_time) * 1000)
    return manifest


def run_verify(config: RunConfig) -> Dict[str, Any]:
    """Run all identity suites; raises SuiteFailure (after writing the report) if any fails."""
    start_time = time.time()
    out_dir = config.resolved_output_dir()

    options = SuiteOptions(
        seed=config.seed,
        corrupt_omega=config.corrupt_omega,
        intertwiner_points=config.intertwiner_points,
        reduction_points=config.reduction_points,
    )
    results = run_all(options)
    failed = first_failure(results)

    report = {
        "seed": config.seed,
        "rng": RNG_ALGORITHM,
        "passed": failed is None,
        "first_failure": failed.name if failed else None,
        "suites": [r.to_dict() for r in results],
    }
    files = {
        "verify_report.json": write_json(out_dir / "verify_report.json", report),
        "generating_element.json": write_element_json(out_dir / "generating_element.json",
                                                      generating_element(options)),
    }
    exit_code = 0 if failed is None else 3
    manifest = _write_manifest(config, out_dir, files, start_time, exit_code, {
        "suites": len(results),
        "timings_ms": {r.name: round(r.duration_ms, 3) for r in results},
        "first_failure": report["first_failure"],
    })
    if failed is not None:
        raise SuiteFailure(failed.name, failed.max_deviation, failed.tolerance)
    return manifest


def run_spectrum(config: RunConfig) -> Dict[str, Any]:
    start_time = time.time()
    out_dir = config.resolved_output_dir()

    spectrum = band_spectrum(config.p, config.q, config.c, config.n_phase)
    matrix = almost_mathieu(config.p, config.q, config.c, config.phi1, config.phi2) if config.dump_matrix else None

    files = {
        "bands.csv": write_csv(out_dir / "bands.csv", BAND_HEADERS, spectrum.rows()),
        "measures.csv": write_csv(out_dir / "measures.csv", MEASURE_HEADERS,
                                  [(spectrum.p, spectrum.q, spectrum.c, spectrum.measure)]),
    }
    if matrix is not None:
        files["matrix.csv"] = write_matrix_csv(out_dir / "matrix.csv", matrix)

    return _write_manifest(config, out_dir, files, start_time, 0, {"measure": spectrum.measure})


def run_butterfly(config: RunConfig) -> Dict[str, Any]:
    start_time = time.time()
    out_dir = config.resolved_output_dir()

    enforcer = NumericLimitsEnforcer()
    for q in config.q_list:
        enforcer.check_dense_dim(q, "measure trend denominator")

    spectra = butterfly(config.q_max, config.c, config.n_phase)
    trend = measure_trend(config.c, config.q_list, config.n_phase)

    files = {
        "butterfly.csv": write_csv(out_dir / "butterfly.csv", BAND_HEADERS,
                                   (row for s in spectra for row in s.rows())),
        "measures.csv": write_csv(out_dir / "measures.csv", MEASURE_HEADERS,
                                  ((s.p, s.q, s.c, s.measure) for s in spectra)),
        "measure_trend.csv": write_csv(out_dir / "measure_trend.csv", MEASURE_HEADERS,
                                       ((p, q, config.c, m) for p, q, m in trend)),
    }
    return _write_manifest(config, out_dir, files, start_time, 0, {"spectra": len(spectra)})


def run_oscillator(config: RunConfig) -> Dict[str, Any]:
    start_time = time.time()
    out_dir = config.resolved_output_dir()
    potential = config.potential_spec()

    if config.mode == "truncated":
        grid = build_truncated(config.n_points, config.half_length, config.tau)
        levels = oscillator_levels(grid, potential, config.n_levels)
    else:
        NumericLimitsEnforcer().check_periodic_dim(config.n_points)
        grid = build_grid(config.n_points, config.m_steps, config.k)
        levels = distinct_levels(eig_hermitian(hamiltonian(grid, potential)))[: config.n_levels]

    files = {
        "eigenvalues.csv": write_csv(out_dir / "eigenvalues.csv", OSCILLATOR_HEADERS, enumerate(levels)),
    }
    return _write_manifest(config, out_dir, files, start_time, 0, {
        "grid": grid.describe(),
        "potential": potential.describe(),
    })


def run_witness(config: RunConfig) -> Dict[str, Any]:
    start_time = time.time()
    out_dir = config.resolved_output_dir()

    reports = extension_gap_report(config.lambda_, config.n_max, config.n_samples)
    final = reports[-1]
    summary = {
        "lambda": config.lambda_,
        "n_max": config.n_max,
        "rho": growth_rate(config.lambda_),
        "growth_base": final.growth_base,
        "final_ratio": final.ratio,
        "interpretation": INTERPRETATION,
    }
    files = {
        "witness.csv": write_csv(out_dir / "witness.csv", WITNESS_HEADERS,
                                 ([r.degree, r.sup_X, r.value_at_lambda, r.ratio] for r in reports)),
        "witness_summary.json": write_json(out_dir / "witness_summary.json", summary),
    }
    return _write_manifest(config, out_dir, files, start_time, 0, {"growth_base": final.growth_base})


RUNNERS: Dict[str, Callable[[RunConfig], Dict[str, Any]]] = {
    "verify": run_verify,
    "spectrum": run_spectrum,
    "butterfly": run_butterfly,
    "oscillator": run_oscillator,
    "witness": run_witness,
}


def run(config: RunConfig) -> Dict[str, Any]:
    _logger.info("Run started", extra={"subcommand": config.subcommand, "seed": config.seed})
    return RUNNERS[config.subcommand](config)
