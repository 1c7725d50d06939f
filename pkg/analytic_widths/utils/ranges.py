"""Parsing of scalar-or-range command-line values (`start:stop:step`, inclusive)."""

import math
from typing import Callable, List, TypeVar

from analytic_widths.exceptions import InvalidInputError

T = TypeVar("T", int, float)

# slack for floating steps that land on stop up to rounding
_STOP_SLACK = 1e-9


def _parse_number(text: str, kind: Callable[[str], T], label: str) -> T:
    try:
        value = kind(text.strip())
    except ValueError:
        raise InvalidInputError(f"{label}: cannot parse '{text}'")
    if isinstance(value, float) and not math.isfinite(value):
        raise InvalidInputError(f"{label}: '{text}' is not finite")
    return value


def parse_range(text: str, kind: Callable[[str], T] = float, label: str = "value") -> List[T]:
    """
    Expand `a`, `a:b` (step 1) or `a:b:c` into an inclusive progression.

    Raises:
        InvalidInputError: If a part is malformed, the step is not positive
            or the range is empty
    """
    parts = text.split(":")
    if len(parts) == 1:
        return [_parse_number(parts[0], kind, label)]
    if len(parts) not in (2, 3):
        raise InvalidInputError(f"{label}: expected 'start:stop:step', got '{text}'")

    start = _parse_number(parts[0], kind, label)
    stop = _parse_number(parts[1], kind, label)
    step = _parse_number(parts[2], kind, label) if len(parts) == 3 else kind("1")
    if step <= 0:
        raise InvalidInputError(f"{label}: step must be positive, got {step}")
    if stop < start:
        raise InvalidInputError(f"{label}: empty range '{text}'")

    count = int(math.floor((stop - start) / step + _STOP_SLACK)) + 1
    return [start + i * step for i in range(count)]
