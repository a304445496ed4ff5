"""Configuration helpers for starlike-radius."""

from .loader import load_configuration
from .schema import StarlikeConfig, build_config, default_config

__all__ = ["load_configuration", "StarlikeConfig", "build_config", "default_config"]
