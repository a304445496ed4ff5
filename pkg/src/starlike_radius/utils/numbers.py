"""Numeric rendering shared by the CSV and JSON outputs."""

from __future__ import annotations

import math
from typing import Any

__all__ = ["round_sig", "clean_value", "render_csv_value"]


def round_sig(value: float, digits: int = 12) -> float:
    """Round to ``digits`` significant digits; the result prints in shortest form."""

    if not math.isfinite(value) or value == 0.0:
        return value
    return float(format(value, f".{digits}g"))


def clean_value(value: Any, digits: int = 12) -> Any:
    """Normalize a record value: floats rounded, non-finite floats to ``None``."""

    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return round_sig(value, digits) if math.isfinite(value) else None
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def render_csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
