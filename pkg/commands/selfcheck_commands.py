import time

from loguru import logger

from analytic_widths.domain.kernel import SeriesConfig
from analytic_widths.exceptions import InvalidInputError
from analytic_widths.selfcheck import CHECKS, run_selfcheck
from commands.run_config import CommandOutput, ExitStatus, RunConfig


def cmd_selfcheck(config: RunConfig) -> CommandOutput:
    """Run the oracle-equivalence suite; exit NOT_CERTIFIED naming any failed check."""
    unknown = [name for name in config.checks if name not in CHECKS]
    if unknown:
        logger.error(f"Unknown selfcheck names: {unknown}")
        raise InvalidInputError(
            f"unknown checks {unknown}; available: {', '.join(CHECKS)}"
        )
    cfg = SeriesConfig(abs_tol=config.tol)
    start_time = time.time()
    results = run_selfcheck(cfg, only=config.checks or None)
    logger.info(f"selfcheck finished in {time.time() - start_time:.1f}s")

    checks = [result.model_dump() for result in results]
    failed = [result.name for result in results if not result.passed]
    if failed:
        return CommandOutput(
            command=config.command,
            checks=checks,
            exit_status=ExitStatus.NOT_CERTIFIED,
            error_message=f"failed checks: {', '.join(failed)}",
        )
    return CommandOutput(command=config.command, checks=checks)
