"""Parameter sweeps evaluated on a thread pool, emitted in grid order."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from .config.schema import StarlikeConfig
from .core.errors import DomainError, UnsupportedPairError
from .envelope import Family, derive_params, supported_regions
from .jobs import radius_record, solve
from .regions import RegionKind, RegionSpec

__all__ = ["SWEEP_PARAMS", "SweepPlan", "grid_values", "run_sweep", "trend_labels"]

logger = logging.getLogger(__name__)

SWEEP_PARAMS = ("b", "c", "alpha", "gamma")
FLAT_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class SweepPlan:
    """A one-parameter sweep around a fixed base point."""

    family: Family
    b: float
    c: float
    region: RegionSpec
    param: str
    start: float
    stop: float
    steps: int
    method: str = "crossing"

    def __post_init__(self) -> None:
        if self.region.kind not in supported_regions(self.family):
            raise UnsupportedPairError(self.family, self.region.kind)
        if self.param not in SWEEP_PARAMS:
            raise DomainError(f"sweep parameter must be one of {SWEEP_PARAMS}, got {self.param!r}")
        if self.param == "c" and self.family is Family.F3:
            raise DomainError("family f3 has no coefficient c to sweep")
        if self.param == "alpha" and self.region.kind is not RegionKind.HALFPLANE:
            raise DomainError("alpha can only be swept on the half-plane")
        if self.param == "gamma" and self.region.kind is not RegionKind.SECTOR:
            raise DomainError("gamma can only be swept on the sector")


def grid_values(start: float, stop: float, steps: int) -> np.ndarray:
    """Evenly spaced values from ``start`` to ``stop`` inclusive."""

    if steps < 1 or start > stop:
        raise DomainError(f"empty sweep range [{start}, {stop}] with {steps} steps")
    if steps == 1:
        return np.array([float(start)])
    return np.linspace(start, stop, steps)


def _point(plan: SweepPlan, value: float) -> Tuple[float, float, RegionSpec]:
    b, c, region = plan.b, plan.c, plan.region
    if plan.param == "b":
        b = value
    elif plan.param == "c":
        c = value
    elif plan.param == "alpha":
        region = RegionSpec(region.kind, alpha=value)
    else:
        region = RegionSpec(region.kind, gamma=value)
    return b, c, region


def _evaluate(plan: SweepPlan, value: float, config: StarlikeConfig) -> Dict[str, Any]:
    b, c, region = _point(plan, float(value))
    params = derive_params(plan.family, b, c, strict=False)
    result = solve(params, region, config, plan.method)
    record = radius_record(params, region, result)
    record.update(param=plan.param, value=float(value))
    return record


def trend_labels(radii: List[float]) -> List[str]:
    """``""`` for the first point, then ``up``/``down``/``flat`` against the previous one."""

    labels: List[str] = []
    for index, radius in enumerate(radii):
        if index == 0:
            labels.append("")
            continue
        delta = radius - radii[index - 1]
        labels.append("flat" if abs(delta) <= FLAT_TOL else ("up" if delta > 0 else "down"))
    return labels


def run_sweep(plan: SweepPlan, config: StarlikeConfig, *, workers: int | None = None) -> List[Dict[str, Any]]:
    """Evaluate every grid point; rows come back in grid order regardless of completion order."""

    values = grid_values(plan.start, plan.stop, plan.steps)
    pool_size = max(1, workers if workers is not None else config.sweep.workers)
    logger.info("sweeping %s over %d points with %d workers", plan.param, values.size, pool_size)
    with ThreadPoolExecutor(max_workers=pool_size) as pool:
        futures = [pool.submit(_evaluate, plan, float(value), config) for value in values]
        rows = [future.result() for future in futures]
    for row, label in zip(rows, trend_labels([row["radius"] for row in rows])):
        row["trend"] = label
    return rows
