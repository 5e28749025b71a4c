"""Command-line entry point ``su2-magnus {lz,rabi,report}``.

Exit codes: 0 on success, 1 for invalid input or configuration, 2 when a numerical method fails.
"""
import argparse
import logging
import sys
from typing import List, Optional

import pydantic

from su2_magnus.cli.commands import cmd_lz, cmd_rabi, cmd_report
from su2_magnus.cli.config import build_config, read_config_file
from su2_magnus.constants import ModelName, Spacing
from su2_magnus.exceptions import NumericalError, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

COMMANDS = {"lz": cmd_lz, "rabi": cmd_rabi, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--model-params", help="fixed parameters, e.g. 'g=1,shape=cos' or 'gamma=0.5'")
    common.add_argument("--axis", help="swept parameter: gamma (lz), delta or g (rabi)")
    common.add_argument("--min", type=float, help="lower end of the sweep")
    common.add_argument("--max", type=float, help="upper end of the sweep")
    common.add_argument("--count", type=int, help="number of sweep points (at least 2)")
    common.add_argument("--log", action="store_true", help="logarithmic spacing")
    common.add_argument(
        "--method",
        action="append",
        help="magnus:<region1|region2|adiabatic>:<order>:<half|full>, zma, heun, oracle or bessel; repeatable",
    )
    common.add_argument("--tol", type=float, help="tolerance of the reference integrator")
    common.add_argument("--out", help="output file; a JSON run summary is written next to it")
    common.add_argument("--samples", help="two-column time, f~ file of a sampled drive (report only)")
    common.add_argument("--workers", type=int, help="parallel worker processes")
    common.add_argument("--no-progress", action="store_true", help="hide progress bars")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="su2-magnus", description="Magnus expansion in su(2) for single-axis driven two-level systems."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("lz", parents=[common], help="Landau-Zener probabilities and Stokes phases")
    subparsers.add_parser("rabi", parents=[common], help="Rabi quasienergies along a Delta or g scan")
    subparsers.add_parser("report", parents=[common], help="PASS/FAIL report of the invariant suites")
    return parser


def _values_from_args(args: argparse.Namespace) -> dict:
    flags = {
        "axis": args.axis,
        "min": args.min,
        "max": args.max,
        "count": args.count,
        "methods": args.method,
        "out": args.out,
        "tolerance": args.tol,
        "model_params": args.model_params,
        "samples": args.samples,
        "workers": args.workers,
    }
    values = {key: value for key, value in flags.items() if value is not None}
    if args.log:
        values["spacing"] = Spacing.LOG.value
    if args.no_progress:
        values["progress"] = False
    return values


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(format="[%(module)-12s] %(message)s", level=logging.DEBUG if args.verbose else logging.INFO)

    try:
        values, lines = read_config_file(args.config) if args.config else ({}, {})
        values.update(_values_from_args(args))
        if args.command == "report":
            values.setdefault("model", ModelName.RABI.value)
        else:
            values["model"] = ModelName(args.command).value
        config = build_config(values, lines)
        COMMANDS[args.command](config)
    except (ValidationError, pydantic.ValidationError) as e:
        print(f"su2-magnus: invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"su2-magnus: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        print(f"su2-magnus: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
