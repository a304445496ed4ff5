"""Logging manager responsible for runtime configuration and lifecycle."""

from __future__ import annotations

import logging
from typing import Dict

from ..config.schema import LoggingConfig
from ..formatters.jsonl import JSONLinesFormatter
from ..formatters.text import StructuredTextFormatter
from ..handlers.console import ConsoleHandlerConfig, build_console_handler
from .context import ContextAdapter, ContextFilter, inject_context
from .levels import ensure_level, register_trace_level

__all__ = ["PACKAGE_LOGGER", "LogManager", "GLOBAL_MANAGER"]

PACKAGE_LOGGER = "starlike_radius"

_FORMATTERS = {
    "text": lambda cfg: StructuredTextFormatter(show_context=cfg.show_context),
    "jsonl": lambda cfg: JSONLinesFormatter(),
}


class LogManager:
    """Owns the console handler attached to the package logger."""

    def __init__(self) -> None:
        self._config: LoggingConfig | None = None
        self._handler: logging.Handler | None = None

    @property
    def configured(self) -> bool:
        return self._config is not None

    def configure(self, config: LoggingConfig) -> None:
        """Apply the supplied logging configuration."""

        self._teardown()
        self._config = config
        register_trace_level(config.enable_trace)
        logging.captureWarnings(True)

        level = ensure_level(config.level)
        handler = build_console_handler(ConsoleHandlerConfig(stream=config.stream, level=level))
        handler.setFormatter(_FORMATTERS[config.format](config))
        handler.addFilter(ContextFilter())

        logger = logging.getLogger(PACKAGE_LOGGER)
        logger.handlers = [handler]
        logger.setLevel(level)
        logger.propagate = False

        warnings_logger = logging.getLogger("py.warnings")
        warnings_logger.addHandler(handler)

        self._handler = handler

    def shutdown(self) -> None:
        """Detach and close the handler."""

        self._teardown()
        self._config = None

    def get_logger(self, name: str) -> logging.Logger:
        return logging.getLogger(name)

    def get_context_logger(self, name: str, **context_kv: object) -> ContextAdapter:
        return inject_context(self.get_logger(name), base_context=dict(context_kv))

    def _teardown(self) -> None:
        handler = self._handler
        if handler is None:
            return
        for logger_name in (PACKAGE_LOGGER, "py.warnings"):
            logger = logging.getLogger(logger_name)
            if handler in logger.handlers:
                logger.removeHandler(handler)
        try:
            handler.flush()
        except Exception:
            pass
        handler.close()
        self._handler = None
        package = logging.getLogger(PACKAGE_LOGGER)
        package.propagate = True
        package.setLevel(logging.NOTSET)
        logging.captureWarnings(False)


GLOBAL_MANAGER = LogManager()
