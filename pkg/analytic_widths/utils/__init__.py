"""
Utils package for analytic-widths.

Symbols are exported lazily so that importing the package does not pull in
numpy before a caller needs it.
"""

from importlib import import_module
from typing import Dict, Tuple

__all__ = [
    # Fourier sums
    "midpoint_sums",
    # Ranges
    "parse_range",
    # Formatting
    "OutputFormat",
    "format_float",
    "render",
    "render_csv",
    "render_json",
    "render_text",
]

_EXPORTS: Dict[str, Tuple[str, str]] = {
    # fourier
    "midpoint_sums": (".fourier", "midpoint_sums"),
    # ranges
    "parse_range": (".ranges", "parse_range"),
    # formatting
    "OutputFormat": (".formatting", "OutputFormat"),
    "format_float": (".formatting", "format_float"),
    "render": (".formatting", "render"),
    "render_csv": (".formatting", "render_csv"),
    "render_json": (".formatting", "render_json"),
    "render_text": (".formatting", "render_text"),
}


def __getattr__(name: str):
    target = _EXPORTS.get(name)
    if target is None:
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
    module_name, attr_name = target
    module = import_module(module_name, __name__)
    value = getattr(module, attr_name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals().keys()) | set(__all__))
