"""Command-line entry point: run scenario files, reproduce the published numbers, sample the potential."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from lib.errors import ConstraintFailure, QuadratureNonConvergence, RydbergEitError
from lib.report_io import print_result, write_result
from lib.runner import enforce, potential_curve, reproduce_paper, run
from lib.scenario_loader import load_scenario
from lib.settings import Settings, configure_logging, load_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONSTRAINT = 2
EXIT_NUMERICS = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=None,
                      help="exit with status 2 when a strict constraint is violated (default)")
    mode.add_argument("--warn", dest="strict", action="store_false", default=None,
                      help="only log violated constraints")
    common.add_argument("--out", type=Path, default=None, help="directory for CSV (and PNG) output")
    common.add_argument("--tol", type=float, default=None, help="relative quadrature tolerance")
    common.add_argument("--workers", type=int, default=None, help="worker processes for sweeps")
    common.add_argument("--plot", action="store_true", help="also write PNG plots (needs --out)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="rydberg-eit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run one scenario file")
    p.add_argument("scenario", type=Path)
    sub.add_parser("reproduce-paper", parents=[common], help="compare the bundled scenarios with published values")
    p = sub.add_parser("potential", parents=[common], help="sample the reduced 1D potential")
    p.add_argument("--zeta-min", type=float, default=-6.0)
    p.add_argument("--zeta-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=601)
    p = sub.add_parser("sweep", parents=[common], help="run a sweep scenario file")
    p.add_argument("scenario", type=Path)
    return parser


def _execute(args: argparse.Namespace, settings: Settings, stdout: TextIO) -> int:
    if args.command == "potential":
        result = potential_curve(args.zeta_min, args.zeta_max, args.points)
    elif args.command == "reproduce-paper":
        result = reproduce_paper(settings)
    else:
        scenario = load_scenario(args.scenario)
        if args.command == "sweep" and scenario.sweep is None:
            logger.error("%s is not a sweep scenario", args.scenario)
            return EXIT_ERROR
        result = run(scenario, settings)

    print_result(result, stdout)
    out = args.out if args.out is not None else (settings.output_dir if args.plot else None)
    if out is not None:
        write_result(result, out, plot=args.plot)
    enforce(result.report, settings.strict)
    return EXIT_OK


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is the constraint-failure status here
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    stdout = sys.stdout if stdout is None else stdout
    try:
        settings = load_settings().with_overrides(
            quad_tol=args.tol, strict=args.strict, max_workers=args.workers, log_level=args.log_level,
        )
    except RydbergEitError as exc:
        configure_logging()
        logger.error("%s", exc)
        return EXIT_ERROR
    configure_logging(settings.log_level)

    try:
        return _execute(args, settings, stdout)
    except ConstraintFailure as exc:
        logger.error("%s", exc)
        return EXIT_CONSTRAINT
    except QuadratureNonConvergence as exc:
        logger.error("Numerical integration failed: %s", exc)
        return EXIT_NUMERICS
    except RydbergEitError as exc:
        logger.error("%s", exc)
        return EXIT_ERROR
