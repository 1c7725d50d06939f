"""
Deterministic rendering of command results as JSON, CSV or text.

Every format keeps the field order of the rows it is given. Finite floats are
written with 17 significant digits in every format, enough to round-trip any
binary64 value; JSON keeps NaN and Infinity as the json module writes them.
"""

import csv
import io
import json
import math
import re
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional


# finite floats pass through json.dumps as marked strings, then lose the quotes
_FLOAT_MARK = "__float17__:"
_MARKED_FLOAT = re.compile(r'"' + _FLOAT_MARK + r'([^"]*)"')


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def format_float(value: float) -> str:
    return format(value, ".17g")


def _flat_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_flat_value(v) for v in value)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and math.isfinite(value):
        return _FLOAT_MARK + format_float(value)
    if isinstance(value, Mapping):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_json(
    command: str,
    params: Mapping[str, Any],
    rows: List[Dict[str, Any]],
    checks: Optional[List[Dict[str, Any]]] = None,
) -> str:
    document = {
        "command": command,
        "params": _jsonable(params),
        "rows": _jsonable(rows),
        "checks": _jsonable(checks or []),
    }
    return _MARKED_FLOAT.sub(r"\1", json.dumps(document, indent=2)) + "\n"


def render_csv(rows: List[Dict[str, Any]]) -> str:
    """Header row from the first record; lists are space-joined into one cell."""
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([_flat_value(row.get(key)) for key in header])
    return buffer.getvalue()


def render_text(command: str, rows: Iterable[Dict[str, Any]]) -> str:
    lines = [f"# {command}"]
    for index, row in enumerate(rows):
        if index:
            lines.append("")
        width = max((len(key) for key in row), default=0)
        for key, value in row.items():
            lines.append(f"{key.ljust(width)}  {_flat_value(value)}")
    return "\n".join(lines) + "\n"


def render(
    fmt: OutputFormat,
    command: str,
    params: Mapping[str, Any],
    rows: List[Dict[str, Any]],
    checks: Optional[List[Dict[str, Any]]] = None,
) -> str:
    """Render rows (and checks, where the format has room for them)."""
    if fmt is OutputFormat.JSON:
        return render_json(command, params, rows, checks)
    if fmt is OutputFormat.CSV:
        return render_csv(rows if rows else list(checks or []))
    return render_text(command, list(rows) + list(checks or []))
