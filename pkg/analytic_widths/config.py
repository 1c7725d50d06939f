"""
Runtime defaults for analytic-widths.

Values are read once at import time. Invalid values are logged and replaced by
the defaults, never raised, so a bad environment cannot stop a computation.

Environment Variables:
    WIDTHS_ABS_TOL: Default absolute tail tolerance for kernel series (default: 1e-14)
    WIDTHS_MAX_TERMS: Default cap on series terms (default: 10000000)
    WIDTHS_THREADS: Maximum worker threads for sweeps (default: CPU count)
    WIDTHS_SCAN_CAP: Largest n examined by threshold scans (default: 1000000)
    WIDTHS_LOG_LEVEL: Log level used by the command line (default: INFO)
"""

import os

from loguru import logger

# tail bounds below this are swamped by binary64 rounding of O(1) partial sums
MIN_ABS_TOL = 1e-18

_LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def _get_abs_tol() -> float:
    """Get the default series tolerance from environment variable or use default."""
    tol_str = os.getenv("WIDTHS_ABS_TOL")
    if tol_str:
        try:
            tol = float(tol_str)
            if not tol > 0:
                logger.warning(
                    f"WIDTHS_ABS_TOL ({tol}) must be positive. Using default: 1e-14"
                )
                return 1e-14
            if tol < MIN_ABS_TOL:
                logger.warning(
                    f"WIDTHS_ABS_TOL ({tol}) is below {MIN_ABS_TOL:g} and cannot be "
                    f"resolved in binary64. Using {MIN_ABS_TOL:g}."
                )
                return MIN_ABS_TOL
            logger.info(f"Using custom series tolerance: {tol:g}")
            return tol
        except ValueError:
            logger.warning(
                f"Invalid WIDTHS_ABS_TOL value: '{tol_str}'. Using default: 1e-14"
            )
    return 1e-14


def _get_positive_int(name: str, default: int) -> int:
    """Read a positive integer setting, falling back to the default."""
    value_str = os.getenv(name)
    if value_str:
        try:
            value = int(value_str)
            if value < 1:
                logger.warning(
                    f"{name} ({value}) must be at least 1. Using default: {default}"
                )
                return default
            logger.info(f"Using custom {name}: {value}")
            return value
        except ValueError:
            logger.warning(
                f"Invalid {name} value: '{value_str}'. Using default: {default}"
            )
    return default


def _get_log_level() -> str:
    level = os.getenv("WIDTHS_LOG_LEVEL", "INFO").upper()
    if level not in _LOG_LEVELS:
        logger.warning(f"Invalid WIDTHS_LOG_LEVEL value: '{level}'. Using INFO")
        return "INFO"
    return level


DEFAULT_ABS_TOL = _get_abs_tol()
DEFAULT_MAX_TERMS = _get_positive_int("WIDTHS_MAX_TERMS", 10_000_000)
THREADS = _get_positive_int("WIDTHS_THREADS", os.cpu_count() or 1)
SCAN_CAP = _get_positive_int("WIDTHS_SCAN_CAP", 1_000_000)
LOG_LEVEL = _get_log_level()
