from __future__ import annotations

import json
import logging
import warnings

import pytest

from starlike_radius import api
from starlike_radius.core.levels import TRACE_LEVEL_NUM, ensure_level, get_level_by_name
from starlike_radius.core.manager import GLOBAL_MANAGER, PACKAGE_LOGGER
from starlike_radius.formatters.jsonl import JSONLinesFormatter
from starlike_radius.formatters.text import StructuredTextFormatter


def test_context_in_text_lines(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "INFO"}})
    logger = api.get_context_logger("starlike_radius.tests", family="f1", b=-1.0)
    logger.add_context(region="halfplane")
    logger.info("radius found")

    err = capsys.readouterr().err.strip()
    assert "b=-1.0 family=f1 region=halfplane" in err
    assert err.endswith("radius found")
    assert "| INFO  |" in err


def test_context_in_jsonl_lines(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "INFO", "format": "jsonl"}})
    logger = api.get_context_logger("starlike_radius.tests", command="radius")
    logger.add_extra(scan_n=4096)
    logger.info("hello")

    record = json.loads(capsys.readouterr().err.strip())
    assert record["message"] == "hello"
    assert record["level"] == "INFO"
    assert record["context"] == {"command": "radius"}
    assert record["extra"]["scan_n"] == 4096


def test_bind_leaves_parent_untouched(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "INFO"}})
    parent = api.get_context_logger("starlike_radius.tests", family="f3")
    child = parent.bind(region="parabola")

    assert parent.context == {"family": "f3"}
    assert child.context == {"family": "f3", "region": "parabola"}


def test_level_filters_records(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "WARNING"}})
    logger = api.get_logger("starlike_radius.tests")
    logger.info("quiet")
    logger.warning("loud")

    err = capsys.readouterr().err
    assert "quiet" not in err
    assert "loud" in err


def test_trace_level_when_enabled(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "TRACE", "enable_trace": True}})
    adapter = api.get_context_logger("starlike_radius.tests")
    adapter.trace("bracket [%g, %g]", 0.1, 0.2)

    assert "bracket [0.1, 0.2]" in capsys.readouterr().err
    assert logging.getLogger(PACKAGE_LOGGER).level == TRACE_LEVEL_NUM


def test_warnings_are_captured(capsys: pytest.CaptureFixture[str]) -> None:
    api.configure({"logging": {"level": "WARNING"}})
    warnings.warn("numerical trouble", RuntimeWarning)

    assert "numerical trouble" in capsys.readouterr().err


def test_shutdown_detaches_handler() -> None:
    api.configure({})
    assert GLOBAL_MANAGER.configured
    GLOBAL_MANAGER.shutdown()

    assert not GLOBAL_MANAGER.configured
    assert logging.getLogger(PACKAGE_LOGGER).handlers == []


def test_level_names() -> None:
    assert get_level_by_name("trace") == TRACE_LEVEL_NUM
    assert get_level_by_name("debug") == logging.DEBUG
    assert get_level_by_name("10") == 10
    assert get_level_by_name("nonsense") == logging.WARNING
    assert ensure_level(" info ") == logging.INFO


def test_formatters_tolerate_records_without_context() -> None:
    record = logging.LogRecord("x", logging.ERROR, __file__, 1, "boom %s", ("now",), None)

    text = StructuredTextFormatter(show_context=True).format(record)
    payload = json.loads(JSONLinesFormatter().format(record))

    assert "| - |" in text
    assert payload["message"] == "boom now"
    assert "context" not in payload
