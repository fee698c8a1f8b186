# dccr/app/logging/logger.py
"""
Purpose: Centralized structured logging for the workbench.

Structured events:
- Identity suite outcomes (suite name, max deviation, tolerance, pass/fail)
- Sweep summaries (spectra computed, phase lattice, wall time)
- Run completion per CLI subcommand (files written, rows, duration)
"""

from __future__ import annotations

import logging
import sys
import json
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Dict, Optional

from app.config.settings import get_settings


class StructuredFormatter(logging.Formatter):
    """Custom formatter that handles structured logging with extra fields."""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "ts": self.formatTime(record),
            "level": record.levelname,
            "name": record.name,
            "msg": record.getMessage()
        }

        if hasattr(record, 'extra_fields'):
            log_data.update(record.extra_fields)

        return json.dumps(log_data, default=str)


class StructuredLoggerAdapter(logging.LoggerAdapter):
    """Logger adapter that adds structured fields to log records."""

    def process(self, msg, kwargs):
        # copy: the record must not hold a dict that contains itself
        kwargs['extra'] = {'extra_fields': dict(kwargs.get('extra') or {})}

        return msg, kwargs


def _build_stderr_handler(json_logs: bool) -> logging.Handler:
    """Build handler for stderr output; stdout stays free for piped CSV."""
    handler = logging.StreamHandler(sys.stderr)

    if json_logs:
        handler.setFormatter(StructuredFormatter())
    else:
        formatter = logging.Formatter(
            fmt="%(asctime)s %(levelname)s %(name)s %(message)s"
        )
        handler.setFormatter(formatter)

    return handler


def _build_file_handler(log_path: str) -> logging.Handler:
    Path(log_path).parent.mkdir(parents=True, exist_ok=True)

    handler = RotatingFileHandler(
        log_path,
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding='utf-8'
    )
    handler.setFormatter(StructuredFormatter())
    return handler


def get_logger(name: str = "dccr") -> StructuredLoggerAdapter:
    """
    Get or create logger with given name.

    Returns logger adapter with structured logging support.
    Logs to stderr, and to <output_dir>/logs/dccr.log when file logging is enabled.
    """
    settings = get_settings()

    base_logger = logging.getLogger(f"dccr.{name}")
    base_logger.setLevel(settings.log_level.upper())
    base_logger.propagate = False

    if not base_logger.handlers:
        base_logger.addHandler(_build_stderr_handler(settings.log_json))

        if settings.log_to_file:
            log_file = settings.output_dir / "logs" / "dccr.log"
            base_logger.addHandler(_build_file_handler(str(log_file)))

    return StructuredLoggerAdapter(base_logger, {})


def log_suite_result(
    logger: StructuredLoggerAdapter,
    suite: str,
    anchor: str,
    max_deviation: float,
    tolerance: float,
    passed: bool,
    cases: int,
    duration_ms: float
) -> None:
    """Standard log format for identity suite outcomes."""
    level = logging.INFO if passed else logging.ERROR
    logger.log(level, f"Suite {'passed' if passed else 'failed'}: {suite}", extra={
        "suite": suite,
        "anchor": anchor,
        "max_deviation": max_deviation,
        "tolerance": tolerance,
        "passed": passed,
        "cases": cases,
        "duration_ms": duration_ms
    })


def log_sweep_complete(
    logger: StructuredLoggerAdapter,
    kind: str,
    spectra: int,
    n_phase: int,
    coupling: float,
    workers: int,
    total_duration_ms: float,
    extra_fields: Optional[Dict[str, object]] = None
) -> None:
    """Standard log format for spectral sweep completion."""
    payload = {
        "kind": kind,
        "spectra": spectra,
        "n_phase": n_phase,
        "coupling": coupling,
        "workers": workers,
        "total_duration_ms": total_duration_ms
    }
    if extra_fields:
        payload.update(extra_fields)
    logger.info("Sweep complete", extra=payload)


def log_run_complete(
    logger: StructuredLoggerAdapter,
    subcommand: str,
    output_dir: str,
    files_written: Dict[str, int],
    exit_code: int,
    total_duration_ms: float
) -> None:
    """Standard log format for a finished CLI run."""
    level = logging.INFO if exit_code == 0 else logging.WARNING
    logger.log(level, f"Run complete: {subcommand}", extra={
        "subcommand": subcommand,
        "output_dir": output_dir,
        "files_written": files_written,
        "rows_total": sum(files_written.values()),
        "exit_code": exit_code,
        "total_duration_ms": total_duration_ms
    })
