"""Configuration schema definition for starlike-radius."""

from __future__ import annotations

from copy import deepcopy
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping, TypeVar

from ..core.errors import ConfigurationError

__all__ = [
    "DEFAULT_CONFIG",
    "default_config",
    "SolverConfig",
    "RegionsConfig",
    "OracleConfig",
    "OutputConfig",
    "SweepConfig",
    "LoggingConfig",
    "StarlikeConfig",
    "build_config",
]

DEFAULT_CONFIG: Dict[str, Any] = {
    "solver": {
        "scan_n": 4096,
        "tol": 1e-12,
        "secant_maxiter": 50,
        "r_max": 1.0 - 1e-9,
    },
    "regions": {
        "n_boundary": 8192,
        "edge_eps": 1e-9,
        "clamp": 1e-4,
    },
    "oracle": {
        "r_tol": 1e-3,
        "n_theta": 1440,
        "n_rad": 48,
        "refine_factor": 4,
        "max_refinements": 2,
        "lemma_rtol": 1e-9,
    },
    "output": {
        "format": "csv",
        "digits": 12,
    },
    "sweep": {
        "workers": 4,
    },
    "logging": {
        "level": "WARNING",
        "format": "text",
        "stream": "stderr",
        "enable_trace": False,
        "show_context": True,
    },
}


def default_config() -> Dict[str, Any]:
    """Return a deep copy of the default configuration mapping."""

    return deepcopy(DEFAULT_CONFIG)


@dataclass(slots=True)
class SolverConfig:
    scan_n: int = 4096
    tol: float = 1e-12
    secant_maxiter: int = 50
    r_max: float = 1.0 - 1e-9


@dataclass(slots=True)
class RegionsConfig:
    n_boundary: int = 8192
    edge_eps: float = 1e-9
    clamp: float = 1e-4


@dataclass(slots=True)
class OracleConfig:
    r_tol: float = 1e-3
    n_theta: int = 1440
    n_rad: int = 48
    refine_factor: int = 4
    max_refinements: int = 2
    lemma_rtol: float = 1e-9


@dataclass(slots=True)
class OutputConfig:
    format: str = "csv"
    digits: int = 12


@dataclass(slots=True)
class SweepConfig:
    workers: int = 4


@dataclass(slots=True)
class LoggingConfig:
    level: str | int = "WARNING"
    format: str = "text"
    stream: str = "stderr"
    enable_trace: bool = False
    show_context: bool = True


@dataclass(slots=True)
class StarlikeConfig:
    solver: SolverConfig = field(default_factory=SolverConfig)
    regions: RegionsConfig = field(default_factory=RegionsConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    raw: Dict[str, Any] = field(default_factory=default_config, repr=False)


_T = TypeVar("_T")


def _section(data: Mapping[str, Any], name: str) -> Mapping[str, Any]:
    payload = data.get(name, {})
    if not isinstance(payload, Mapping):
        raise ConfigurationError(f"Section '{name}' must be a table, got {type(payload).__name__}")
    return payload


def _coerce(section: str, key: str, value: Any, kind: Callable[[Any], _T]) -> _T:
    if kind is int and isinstance(value, float) and not value.is_integer():
        raise ConfigurationError(f"{section}.{key} must be an integer, got {value!r}")
    if isinstance(value, bool) and kind is not bool:
        raise ConfigurationError(f"{section}.{key} must be numeric, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"{section}.{key}: cannot interpret {value!r}") from exc


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigurationError(message)


def _to_solver(data: Mapping[str, Any]) -> SolverConfig:
    cfg = SolverConfig(
        scan_n=_coerce("solver", "scan_n", data.get("scan_n", 4096), int),
        tol=_coerce("solver", "tol", data.get("tol", 1e-12), float),
        secant_maxiter=_coerce("solver", "secant_maxiter", data.get("secant_maxiter", 50), int),
        r_max=_coerce("solver", "r_max", data.get("r_max", 1.0 - 1e-9), float),
    )
    _require(cfg.scan_n >= 64, f"solver.scan_n must be at least 64, got {cfg.scan_n}")
    _require(cfg.tol > 0.0, f"solver.tol must be positive, got {cfg.tol}")
    _require(cfg.secant_maxiter >= 0, "solver.secant_maxiter must be non-negative")
    _require(0.0 < cfg.r_max < 1.0, f"solver.r_max must lie in (0, 1), got {cfg.r_max}")
    return cfg


def _to_regions(data: Mapping[str, Any]) -> RegionsConfig:
    cfg = RegionsConfig(
        n_boundary=_coerce("regions", "n_boundary", data.get("n_boundary", 8192), int),
        edge_eps=_coerce("regions", "edge_eps", data.get("edge_eps", 1e-9), float),
        clamp=_coerce("regions", "clamp", data.get("clamp", 1e-4), float),
    )
    _require(cfg.n_boundary >= 256, f"regions.n_boundary must be at least 256, got {cfg.n_boundary}")
    _require(cfg.edge_eps > 0.0, "regions.edge_eps must be positive")
    _require(0.0 < cfg.clamp < 0.1, f"regions.clamp must lie in (0, 0.1), got {cfg.clamp}")
    return cfg


def _to_oracle(data: Mapping[str, Any]) -> OracleConfig:
    cfg = OracleConfig(
        r_tol=_coerce("oracle", "r_tol", data.get("r_tol", 1e-3), float),
        n_theta=_coerce("oracle", "n_theta", data.get("n_theta", 1440), int),
        n_rad=_coerce("oracle", "n_rad", data.get("n_rad", 48), int),
        refine_factor=_coerce("oracle", "refine_factor", data.get("refine_factor", 4), int),
        max_refinements=_coerce("oracle", "max_refinements", data.get("max_refinements", 2), int),
        lemma_rtol=_coerce("oracle", "lemma_rtol", data.get("lemma_rtol", 1e-9), float),
    )
    _require(0.0 < cfg.r_tol <= 1e-3, f"oracle.r_tol must lie in (0, 1e-3], got {cfg.r_tol}")
    _require(cfg.n_theta >= 720, f"oracle.n_theta must be at least 720, got {cfg.n_theta}")
    _require(cfg.n_rad >= 32, f"oracle.n_rad must be at least 32, got {cfg.n_rad}")
    _require(cfg.refine_factor >= 2, "oracle.refine_factor must be at least 2")
    _require(cfg.max_refinements >= 0, "oracle.max_refinements must be non-negative")
    _require(0.0 < cfg.lemma_rtol < 1e-3, f"oracle.lemma_rtol must lie in (0, 1e-3), got {cfg.lemma_rtol}")
    return cfg


def _to_output(data: Mapping[str, Any]) -> OutputConfig:
    fmt = str(data.get("format", "csv")).strip().lower()
    cfg = OutputConfig(format=fmt, digits=_coerce("output", "digits", data.get("digits", 12), int))
    _require(cfg.format in {"csv", "json"}, f"output.format must be 'csv' or 'json', got {fmt!r}")
    _require(1 <= cfg.digits <= 17, f"output.digits must lie in [1, 17], got {cfg.digits}")
    return cfg


def _to_sweep(data: Mapping[str, Any]) -> SweepConfig:
    cfg = SweepConfig(workers=_coerce("sweep", "workers", data.get("workers", 4), int))
    _require(cfg.workers >= 1, f"sweep.workers must be at least 1, got {cfg.workers}")
    return cfg


def _to_logging(data: Mapping[str, Any]) -> LoggingConfig:
    level = data.get("level", "WARNING")
    cfg = LoggingConfig(
        level=level.strip().upper() if isinstance(level, str) else level,
        format=str(data.get("format", "text")).strip().lower(),
        stream=str(data.get("stream", "stderr")).strip().lower(),
        enable_trace=bool(data.get("enable_trace", False)),
        show_context=bool(data.get("show_context", True)),
    )
    _require(cfg.format in {"text", "jsonl"}, f"logging.format must be 'text' or 'jsonl', got {cfg.format!r}")
    _require(cfg.stream in {"stdout", "stderr"}, f"logging.stream must be 'stdout' or 'stderr', got {cfg.stream!r}")
    return cfg


def build_config(data: Mapping[str, Any]) -> StarlikeConfig:
    """Convert a raw mapping into a validated :class:`StarlikeConfig`."""

    return StarlikeConfig(
        solver=_to_solver(_section(data, "solver")),
        regions=_to_regions(_section(data, "regions")),
        oracle=_to_oracle(_section(data, "oracle")),
        output=_to_output(_section(data, "output")),
        sweep=_to_sweep(_section(data, "sweep")),
        logging=_to_logging(_section(data, "logging")),
        raw=dict(data),
    )
