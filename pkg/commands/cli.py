"""
Command-line entry point for analytic-widths.

Usage:
    analytic-widths widths --h 1 --beta 0 --n 3
    analytic-widths sweep --h 0.5:2:0.5 --beta 0:1:0.5 --n 3:12 --format csv
    analytic-widths thresholds --h 1
    analytic-widths verify --h 1 --beta 0.5 --n 81
    analytic-widths spline --h 1 --beta 0.3 --n 4 --y 0.1
    analytic-widths selfcheck --format json

Exit status: 0 success, 1 usage error, 2 certification failure, 3 numerical failure.

Environment Variables:
    WIDTHS_LOG_LEVEL: stderr log level (default: INFO)
    WIDTHS_THREADS: Worker threads for sweep (default: CPU count)
"""

from dotenv import load_dotenv

load_dotenv()

import argparse
import sys
from typing import Callable, Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from analytic_widths.config import LOG_LEVEL
from analytic_widths.exceptions import InvalidInputError, NumericalError
from analytic_widths.utils.formatting import OutputFormat, render
from analytic_widths.utils.ranges import parse_range
from commands.run_config import Command, CommandOutput, ExitStatus, RunConfig
from commands.selfcheck_commands import cmd_selfcheck
from commands.verify_commands import cmd_spline, cmd_verify
from commands.width_commands import cmd_sweep, cmd_thresholds, cmd_widths

HANDLERS: Dict[Command, Callable[[RunConfig], CommandOutput]] = {
    Command.WIDTHS: cmd_widths,
    Command.SWEEP: cmd_sweep,
    Command.THRESHOLDS: cmd_thresholds,
    Command.VERIFY: cmd_verify,
    Command.SPLINE: cmd_spline,
    Command.SELFCHECK: cmd_selfcheck,
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitStatus.USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="analytic-widths",
        description="Exact widths of classes of functions analytic in a strip",
    )
    parser.add_argument(
        "command",
        choices=[c.value for c in Command],
        help="What to compute",
    )
    parser.add_argument(
        "--h", default="1", help="Strip half-width: value or start:stop:step (default: 1)"
    )
    parser.add_argument(
        "--beta", default="0", help="Phase parameter: value or range (default: 0)"
    )
    parser.add_argument(
        "--n", default="3", help="Approximation order: integer or range (default: 3)"
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=1e-14,
        help="Absolute tail tolerance for every series (default: 1e-14)",
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="Output format (default: json)",
    )
    parser.add_argument("--out", default=None, help="Write output to PATH instead of stdout")
    parser.add_argument(
        "--y", type=float, default=None, help="Node shift for spline (default: y0)"
    )
    parser.add_argument(
        "--check",
        action="append",
        default=[],
        help="Run only this selfcheck (repeatable)",
    )
    return parser


def _configure_logging() -> None:
    logger.remove()
    logger.add(sys.stderr, level=LOG_LEVEL)


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    """Parse argv into a validated RunConfig (exits 1 on argparse errors)."""
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=Command(args.command),
        h=parse_range(args.h, float, "--h"),
        beta=parse_range(args.beta, float, "--beta"),
        n=parse_range(args.n, int, "--n"),
        tol=args.tol,
        format=OutputFormat(args.format),
        out=args.out,
        y=args.y,
        checks=args.check,
    )


def _emit(config: RunConfig, output: CommandOutput) -> None:
    text = render(
        config.format, config.command.value, config.params(), output.rows, output.checks
    )
    if config.out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        config.out.write_text(text, encoding="utf-8", newline="\n")
        logger.info(f"Wrote {config.command.value} output to {config.out}")


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit status."""
    _configure_logging()
    try:
        config = parse_config(argv)
    except (ValidationError, InvalidInputError) as e:
        logger.error(f"Invalid arguments: {e}")
        return ExitStatus.USAGE

    try:
        output = HANDLERS[config.command](config)
    except (ValidationError, InvalidInputError) as e:
        logger.error(f"Invalid parameters: {e}")
        return ExitStatus.USAGE
    except NumericalError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return ExitStatus.NUMERICAL

    _emit(config, output)
    if output.error_message:
        logger.error(output.error_message)
    return output.exit_status


def main() -> None:
    sys.exit(int(run()))


if __name__ == "__main__":
    main()
