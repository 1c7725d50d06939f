"""Command handlers behind the analytic-widths CLI"""

from .run_config import Command, CommandOutput, ExitStatus, RunConfig
from .selfcheck_commands import cmd_selfcheck
from .verify_commands import cmd_spline, cmd_verify
from .width_commands import cmd_sweep, cmd_thresholds, cmd_widths

__all__ = [
    "Command",
    "CommandOutput",
    "ExitStatus",
    "RunConfig",
    # Width commands
    "cmd_widths",
    "cmd_sweep",
    "cmd_thresholds",
    # Certification commands
    "cmd_verify",
    "cmd_spline",
    "cmd_selfcheck",
]
