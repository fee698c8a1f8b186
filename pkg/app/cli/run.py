# dccr/app/cli/run.py
"""
Entry point for the dccr command line.

Usage:
    python -m app.cli.run verify --seed 7
    python -m app.cli.run spectrum --p 13 --q 34 --c 0.5 --n-phase 16
    python -m app.cli.run butterfly --q-max 20 --c 1
    python -m app.cli.run oscillator --mode truncated --n-points 4096 --half-length 12 --tau 0.1
    python -m app.cli.run witness --lambda 0 --n-max 25

Every subcommand also takes --config FILE (flat YAML) and --output-dir DIR.
Exit codes: 0 success, 2 config error, 3 identity-suite failure,
4 numeric precondition failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from app.cli.config import ConfigError, load_run_config
from app.logging.logger import get_logger
from app.main import run
from app.verify.suites import SuiteFailure

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SUITE = 3
EXIT_PRECONDITION = 4


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="flat YAML key/value file")
    parser.add_argument("--output-dir", type=Path, default=None)
    parser.add_argument("--seed", type=int, default=None)


def _int_list(value: str) -> List[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dccr", description="Discretized CCR workbench")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    verify = sub.add_parser("verify", help="run the identity suites")
    _common(verify)
    verify.add_argument("--intertwiner-points", type=int, default=None)
    verify.add_argument("--reduction-points", type=int, default=None)
    verify.add_argument("--corrupt-omega", action="store_true", default=None, help=argparse.SUPPRESS)

    spectrum = sub.add_parser("spectrum", help="band spectrum of U + U* + c(V + V*) at theta = 2 pi p/q")
    _common(spectrum)
    spectrum.add_argument("--p", type=int, default=None)
    spectrum.add_argument("--q", type=int, default=None)
    spectrum.add_argument("--c", type=float, default=None)
    spectrum.add_argument("--n-phase", type=int, default=None)
    spectrum.add_argument("--dump-matrix", action="store_true", default=None)
    spectrum.add_argument("--phi1", type=float, default=None)
    spectrum.add_argument("--phi2", type=float, default=None)

    fly = sub.add_parser("butterfly", help="band spectra for every reduced p/q with q <= q_max")
    _common(fly)
    fly.add_argument("--q-max", type=int, default=None)
    fly.add_argument("--c", type=float, default=None)
    fly.add_argument("--n-phase", type=int, default=None)
    fly.add_argument("--q-list", type=_int_list, default=None, help="denominators for the measure trend")

    osc = sub.add_parser("oscillator", help="levels of the discretized Hamiltonian")
    _common(osc)
    osc.add_argument("--mode", choices=["periodic", "truncated"], default=None)
    osc.add_argument("--n-points", type=int, default=None)
    osc.add_argument("--m-steps", type=int, default=None)
    osc.add_argument("--k", type=int, default=None)
    osc.add_argument("--tau", type=float, default=None)
    osc.add_argument("--half-length", type=float, default=None)
    osc.add_argument("--n-levels", type=int, default=None)
    osc.add_argument("--potential", choices=["harmonic", "quartic", "constant", "tabulated"], default=None)
    osc.add_argument("--c", type=float, default=None)
    osc.add_argument("--quartic-b", type=float, default=None)
    osc.add_argument("--v0", type=float, default=None)
    osc.add_argument("--potential-table", type=Path, default=None)

    witness = sub.add_parser("witness", help="extension-gap certificate at lambda")
    _common(witness)
    witness.add_argument("--lambda", dest="lambda_", type=float, default=None)
    witness.add_argument("--n-max", type=int, default=None)
    witness.add_argument("--n-samples", type=int, default=None)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger = get_logger("cli.run")

    overrides = {k: v for k, v in vars(args).items() if k not in ("subcommand", "config")}
    try:
        config = load_run_config(args.subcommand, args.config, overrides)
        run(config)
    except ConfigError as e:
        logger.error(str(e))
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SuiteFailure as e:
        logger.error(str(e))
        print(str(e), file=sys.stderr)
        return EXIT_SUITE
    except ValueError as e:
        logger.error("Precondition failed", extra={"subcommand": args.subcommand, "error": str(e)})
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
