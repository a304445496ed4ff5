"""Job descriptions, solver dispatch and the result records every command emits."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import statements
from .config.schema import StarlikeConfig
from .core.errors import DomainError, UnsupportedExtremalError
from .envelope import ClassParams, Family, RadiusResult, derive_params, radius_by_crossing, supported_regions
from .oracle import brute_radius, build_extremal, contact_side, sharpness_claimed
from .regions import RegionKind, RegionSpec

__all__ = [
    "JobSpec",
    "METHODS",
    "solve",
    "oracle_radius",
    "radius_record",
    "table_records",
]

logger = logging.getLogger(__name__)

METHODS = ("crossing", "statement")

Record = Dict[str, Any]


@dataclass(slots=True)
class JobSpec:
    """One CLI invocation after argument parsing.

    ``region`` is unset for ``table`` (every supported region is used, with
    ``alpha`` and ``gamma`` applied) and for ``verify``.
    """

    command: str
    family: Optional[Family] = None
    b: float = 0.0
    c: float = 0.0
    region: Optional[RegionSpec] = None
    alpha: float = 0.0
    gamma: float = 1.0
    output: Optional[str] = None
    format: Optional[str] = None
    tol: Optional[float] = None
    scan_n: Optional[int] = None
    log_level: Optional[str] = None
    log_format: Optional[str] = None
    method: str = "crossing"
    with_oracle: bool = False
    param: Optional[str] = None
    start: float = 0.0
    stop: float = 0.0
    steps: int = 0
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if self.output not in (None, "-") and Path(self.output).is_dir():
            raise DomainError(f"output path {self.output} is a directory")

    def overrides(self) -> Dict[str, Dict[str, Any]]:
        """Configuration overrides carried by the command-line flags."""

        overrides: Dict[str, Dict[str, Any]] = {}
        pairs = [
            ("logging", "level", self.log_level),
            ("logging", "format", self.log_format),
            ("solver", "tol", self.tol),
            ("solver", "scan_n", self.scan_n),
            ("output", "format", self.format),
            ("sweep", "workers", self.workers),
        ]
        for section, key, value in pairs:
            if value is not None:
                overrides.setdefault(section, {})[key] = value
        return overrides

    def require_family(self) -> Family:
        if self.family is None:
            raise DomainError(f"{self.command} needs a family")
        return self.family

    def params(self) -> ClassParams:
        return derive_params(self.require_family(), self.b, self.c)

    def target(self) -> RegionSpec:
        if self.region is None:
            raise DomainError(f"{self.command} needs a region")
        return self.region


def solve(params: ClassParams, region: RegionSpec, config: StarlikeConfig, method: str = "crossing") -> RadiusResult:
    """Radius by the requested method with solver settings from ``config``."""

    solver = config.solver
    options = dict(scan_n=solver.scan_n, tol=solver.tol, r_max=solver.r_max, secant_maxiter=solver.secant_maxiter)
    if method == "statement":
        return statements.radius_by_statement(params, region, **options)
    return radius_by_crossing(params, region, **options)


def oracle_radius(params: ClassParams, region: RegionSpec, config: StarlikeConfig) -> Optional[float]:
    """Brute-force radius of the extremal touching ``region``; ``None`` without an extremal."""

    try:
        extremal = build_extremal(params, contact_side(region))
    except UnsupportedExtremalError:
        return None
    oracle = config.oracle
    return brute_radius(
        extremal.f,
        region,
        oracle.r_tol,
        oracle.n_theta,
        oracle.n_rad,
        n_boundary=config.regions.n_boundary,
        edge_eps=config.regions.edge_eps,
        refine_factor=oracle.refine_factor,
        max_refinements=oracle.max_refinements,
    )


def _warnings(params: ClassParams, result: RadiusResult) -> str:
    notes = [params.warning] if params.warning else []
    if result.whole_disk:
        notes.append("margin keeps its sign on the whole disk; radius is the solver cap")
    return "; ".join(notes)


def radius_record(
    params: ClassParams,
    region: RegionSpec,
    result: RadiusResult,
    *,
    oracle: Optional[float] = None,
) -> Record:
    return {
        "family": params.family.value,
        "b": params.b,
        "c": None if params.family is Family.F3 else params.c,
        "region": region.name,
        "alpha": region.alpha if region.kind is RegionKind.HALFPLANE else None,
        "gamma": region.gamma if region.kind is RegionKind.SECTOR else None,
        "radius": result.radius,
        "method": result.method.value,
        "residual": result.residual,
        "sharp_claimed": sharpness_claimed(params.family, region),
        "oracle_radius": oracle if oracle is not None else result.oracle_radius,
        "warning": _warnings(params, result),
    }


def _table_note(params: ClassParams, region: RegionSpec, crossing: RadiusResult, stated: RadiusResult) -> str:
    notes: List[str] = []
    equation_flagged = any(
        item.family is params.family and item.region is region.kind for item in statements.DISCREPANCIES
    )
    if equation_flagged:
        proof = statements.radius_by_statement(params, region, variant="proof")
        notes.append(f"displayed equation differs from its proof (proof root {proof.radius:.12g})")
    if params.family is Family.F2:
        notes.append("no extremal printed")
    if crossing.whole_disk or stated.whole_disk:
        notes.append("no crossing below the solver cap")
    return "; ".join(notes)


def table_records(
    params: ClassParams,
    config: StarlikeConfig,
    *,
    alpha: float = 0.0,
    gamma: float = 1.0,
    with_oracle: bool = True,
) -> List[Record]:
    """One record per supported region, with both methods side by side."""

    rows: List[Record] = []
    for kind in supported_regions(params.family):
        region = RegionSpec(kind, alpha=alpha, gamma=gamma)
        crossing = solve(params, region, config, "crossing")
        stated = solve(params, region, config, "statement")
        oracle = oracle_radius(params, region, config) if with_oracle else None
        row = radius_record(params, region, crossing, oracle=oracle)
        diff = abs(crossing.radius - stated.radius)
        row["radius_crossing"] = row.pop("radius")
        row.update(
            radius_statement=stated.radius,
            abs_diff=diff if math.isfinite(diff) else None,
            note=_table_note(params, region, crossing, stated),
        )
        rows.append(row)
        logger.debug("%s on %s: %.12g", params.describe(), region.label(), crossing.radius)
    return rows
