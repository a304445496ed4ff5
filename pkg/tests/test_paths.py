from __future__ import annotations

import io
import json
import math
from pathlib import Path

import pytest

from starlike_radius.core.errors import ConfigurationError, DomainError
from starlike_radius.formatters.table import RECORD_FIELDS, normalize_records, render, render_csv, render_json
from starlike_radius.utils.numbers import round_sig
from starlike_radius.utils.paths import resolve_output, write_output


def test_resolve_output_nested(tmp_path: Path) -> None:
    target = resolve_output(tmp_path / "runs" / "f1" / "table.csv")

    assert target is not None
    assert target.parent.is_dir()
    assert not target.exists()
    assert resolve_output("-") is None
    assert resolve_output(None) is None


def test_resolve_output_rejects_directory(tmp_path: Path) -> None:
    with pytest.raises(DomainError):
        resolve_output(tmp_path)


def test_write_output_to_stream_and_file(tmp_path: Path) -> None:
    stream = io.StringIO()
    write_output("a,b\r\n", None, stream=stream)
    write_output("a,b\r\n", tmp_path / "x.csv")

    assert stream.getvalue() == "a,b\r\n"
    assert (tmp_path / "x.csv").read_bytes() == b"a,b\r\n"


RECORD = {
    "family": "f1",
    "b": -1.0,
    "c": -1.0,
    "region": "halfplane",
    "alpha": 0.0,
    "gamma": None,
    "radius": 0.2000000000000000111,
    "method": "envelope-crossing",
    "residual": math.nan,
    "sharp_claimed": True,
    "oracle_radius": None,
    "warning": "",
    "ignored": 1,
}


def test_normalized_records_follow_the_field_list() -> None:
    (row,) = normalize_records([RECORD], RECORD_FIELDS)

    assert list(row) == list(RECORD_FIELDS)
    assert row["residual"] is None
    assert row["sharp_claimed"] is True


def test_csv_rendering() -> None:
    text = render_csv([RECORD], RECORD_FIELDS)

    header, row = text.split("\r\n")[:2]
    assert header.split(",") == list(RECORD_FIELDS)
    assert row == "f1,-1.0,-1.0,halfplane,0.0,,0.2,envelope-crossing,,true,,"
    assert text.endswith("\r\n")


def test_json_rendering() -> None:
    text = render_json([RECORD], RECORD_FIELDS)

    assert text.endswith("]\n")
    (record,) = json.loads(text)
    assert record["radius"] == 0.2
    assert record["residual"] is None


def test_unknown_format() -> None:
    with pytest.raises(ConfigurationError):
        render([RECORD], RECORD_FIELDS, "xml")


def test_round_sig() -> None:
    assert round_sig(1.0 / 3.0) == 0.333333333333
    assert round_sig(0.1 + 0.2) == 0.3
    assert math.isinf(round_sig(math.inf))
    assert round_sig(123456.7891234567, 6) == 123457.0
