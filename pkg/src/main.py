import argparse
import sys
from pathlib import Path
from typing import List, Optional

from cli.commands import (
    COMMANDS,
    CommandContext,
    cmd_amplitude,
    cmd_phase_shifts,
    cmd_poles,
    cmd_predict_poles,
    cmd_specfun_table,
    cmd_uniqueness_gap,
    cmd_verify,
    search_region,
    verification_table,
)
from cli.plotting import plot_poles
from config.settings import RunConfig
from evaluation.results import FORMATS, Provenance, ResultTable, default_output_path
from utils.env import load_environment, thread_count
from utils.errors import ConfigError, ReggeScatError
from utils.logging_config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ASSERTION = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reggescat",
        description="Phase shifts, Jost functions and Regge poles of radial potentials.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="YAML run configuration")
    parser.add_argument("--out", type=Path, help="output file (default: results/<command>_<timestamp>)")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--svg", type=Path, help="pole scatter output (poles only)")
    parser.add_argument("--tol", type=float,
                        help="verify: tolerance of every residual check; otherwise the ODE relative tolerance")
    parser.add_argument("--threads", type=int, help="worker threads (default: REGGESCAT_THREADS or 1)")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.load(args.config) if args.config else RunConfig()
    if args.tol is not None:
        if not args.tol > 0:
            raise ConfigError(f"--tol must be positive, got {args.tol}")
        if args.command != "verify":
            config = config.with_tolerance(ode_rtol=args.tol)
    return config


def run(args: argparse.Namespace) -> int:
    """Execute one subcommand; returns the process exit status."""
    config = load_config(args)
    base_dir = args.config.parent if args.config else None
    context = CommandContext(config, thread_count(args.threads), base_dir)
    out = args.out or default_output_path(args.command, args.format)
    status = EXIT_OK

    if args.command == "verify":
        report = cmd_verify(context, args.tol)
        if args.format == "json":
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(report.to_json(Provenance.from_config("verify", config)), encoding="utf-8")
        else:
            verification_table(context, report).write(out, "csv")
        print(f"{len(report.checks)} checks, {len(report.failures)} failed")
        for check in report.failures:
            print(f"  FAIL {check.suite}/{check.name}: residual {check.residual:.3g} > {check.tolerance:.1g}")
        status = EXIT_OK if report.passed else EXIT_ASSERTION
    elif args.command == "poles":
        table, poles, predictions = cmd_poles(context)
        if args.svg:
            plot_poles(poles, args.svg, predictions, search_region(context))
        table.write(out, args.format)
        print(f"{len(poles)} poles located")
    else:
        handlers = {
            "phase-shifts": cmd_phase_shifts,
            "amplitude": cmd_amplitude,
            "predict-poles": cmd_predict_poles,
            "uniqueness-gap": cmd_uniqueness_gap,
            "specfun-table": cmd_specfun_table,
        }
        table: ResultTable = handlers[args.command](context)
        table.write(out, args.format)
        print(f"{len(table.rows)} rows, {len(table.errors)} errors")

    if args.svg and args.command != "poles":
        logger.warning("--svg is only used by the poles command")
    print(f"Results written to {out}")
    return status


def main(argv: Optional[List[str]] = None) -> int:
    load_environment()
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ReggeScatError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
