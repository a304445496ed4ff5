"""CSV and JSON rendering of result records."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Mapping, Sequence

from ..core.errors import ConfigurationError
from ..utils.numbers import clean_value, render_csv_value

__all__ = [
    "RECORD_FIELDS",
    "TABLE_FIELDS",
    "SWEEP_FIELDS",
    "normalize_records",
    "render_csv",
    "render_json",
    "render",
]

RECORD_FIELDS = (
    "family",
    "b",
    "c",
    "region",
    "alpha",
    "gamma",
    "radius",
    "method",
    "residual",
    "sharp_claimed",
    "oracle_radius",
    "warning",
)
# the two solving methods sit side by side in tables
TABLE_FIELDS = tuple(
    "radius_crossing" if name == "radius" else name for name in RECORD_FIELDS
) + ("radius_statement", "abs_diff", "note")
SWEEP_FIELDS = RECORD_FIELDS + ("param", "value", "trend")


def normalize_records(records: Iterable[Mapping[str, Any]], fields: Sequence[str], digits: int = 12) -> List[Dict[str, Any]]:
    """Project records onto ``fields`` in order with numbers rounded to ``digits``."""

    return [{name: clean_value(record.get(name), digits) for name in fields} for record in records]


def render_csv(records: Iterable[Mapping[str, Any]], fields: Sequence[str], digits: int = 12) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(fields)
    for row in normalize_records(records, fields, digits):
        writer.writerow([render_csv_value(row[name]) for name in fields])
    return buffer.getvalue()


def render_json(records: Iterable[Mapping[str, Any]], fields: Sequence[str], digits: int = 12) -> str:
    payload = normalize_records(records, fields, digits)
    return json.dumps(payload, ensure_ascii=False, indent=2, allow_nan=False) + "\n"


_RENDERERS = {"csv": render_csv, "json": render_json}


def render(records: Iterable[Mapping[str, Any]], fields: Sequence[str], fmt: str, digits: int = 12) -> str:
    try:
        renderer = _RENDERERS[fmt]
    except KeyError as exc:
        raise ConfigurationError(f"unknown output format {fmt!r}") from exc
    return renderer(records, fields, digits)
