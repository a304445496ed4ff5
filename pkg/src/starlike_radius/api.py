"""Public configuration and logging entry points."""

from __future__ import annotations

import logging
from typing import Any, Dict

from .config.loader import load_configuration
from .config.schema import StarlikeConfig
from .core.context import ContextAdapter
from .core.manager import GLOBAL_MANAGER

__all__ = ["configure", "settings", "get_logger", "get_context_logger"]

_CONFIGURED = False
_SETTINGS: StarlikeConfig | None = None


def configure(overrides: Dict[str, Any] | None = None) -> StarlikeConfig:
    """Load configuration with ``overrides`` on top and apply its logging section."""

    global _CONFIGURED, _SETTINGS
    config = load_configuration(overrides or {})
    GLOBAL_MANAGER.configure(config.logging)
    _SETTINGS = config
    _CONFIGURED = True
    return config


def _ensure_configured() -> StarlikeConfig:
    if not _CONFIGURED or _SETTINGS is None:
        return configure({})
    return _SETTINGS


def settings() -> StarlikeConfig:
    """Return the active configuration, loading defaults on first use."""

    return _ensure_configured()


def get_logger(name: str) -> logging.Logger:
    """Return a logger with the given name."""

    _ensure_configured()
    return GLOBAL_MANAGER.get_logger(name)


def get_context_logger(name: str, **context_kv: Any) -> ContextAdapter:
    """Return a context-aware logger carrying static key/value pairs."""

    _ensure_configured()
    return GLOBAL_MANAGER.get_context_logger(name, **context_kv)
