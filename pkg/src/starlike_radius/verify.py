"""Self-verification suite for the radius pipeline.

Each check returns a :class:`CheckResult`; :func:`run_verification` collects
them with the discrepancy report and :func:`raise_for_failures` turns the
first failure into :class:`VerificationError`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Tuple

import numpy as np

from . import statements
from .config.schema import StarlikeConfig
from .core.errors import ParameterError, VerificationError
from .envelope import (
    ClassParams,
    Family,
    derive_params,
    envelope_params,
    radius_by_crossing,
    supported_regions,
)
from .jobs import oracle_radius
from .oracle import (
    Side,
    build_extremal,
    contact_side,
    envelope_attained,
    lemma1_check,
    sharpness_claimed,
    verify_sharpness,
)
from .regions import (
    ALL_KINDS,
    INDETERMINATE,
    INSIDE,
    RegionKind,
    RegionSpec,
    classify,
    contains_many,
    disk_bound,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "GRID",
    "admissible_params",
    "run_verification",
    "raise_for_failures",
    "render_report",
]

logger = logging.getLogger(__name__)

GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)
AGREEMENT_TOL = 1e-8
SPECIALIZATION_TOL = 1e-10
EXACT_TOL = 1e-9
SHARPNESS_TOL = 1e-6
ORACLE_SLACK = 5e-3
DECOMPOSITION_TOL = 1e-12

# corner points plus admissible points with positive first coefficient
ORACLE_POINTS = (
    (Family.F1, -1.0, -1.0),
    (Family.F1, 0.25, 0.0),
    (Family.F1, 0.5, 0.25),
    (Family.F3, -1.0, 0.0),
    (Family.F3, -1.0 / 3.0, 0.0),
    (Family.F3, -0.5, 0.0),
    (Family.F3, 0.0, 0.0),
    (Family.F3, 0.25, 0.0),
)


@dataclass(slots=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


@dataclass(slots=True)
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    discrepancies: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


def admissible_params(family: Family) -> List[ClassParams]:
    """Grid points of ``family`` that satisfy the envelope hypotheses."""

    c_values: Iterable[float] = (0.0,) if family is Family.F3 else GRID
    found: List[ClassParams] = []
    for b in GRID:
        for c in c_values:
            try:
                found.append(derive_params(family, b, c))
            except ParameterError:
                continue
    return found


def _regions(family: Family, *, alpha: float = 0.0, gamma: float = 0.5) -> List[RegionSpec]:
    return [RegionSpec(kind, alpha=alpha, gamma=gamma) for kind in supported_regions(family)]


def _result(name: str, failures: List[str], cases: int) -> CheckResult:
    if failures:
        logger.error("check %s failed: %s", name, failures[0])
        return CheckResult(name, False, cases, f"{len(failures)} of {cases} failed; first: {failures[0]}")
    logger.info("check %s passed (%d cases)", name, cases)
    return CheckResult(name, True, cases)


# -- individual checks ---------------------------------------------------------------

def check_exact_values(config: StarlikeConfig) -> CheckResult:
    """Closed-form radii that pin the whole pipeline."""

    solver = config.solver
    expected: List[Tuple[str, ClassParams, RegionSpec, float]] = [
        ("f1 b=c=-1 halfplane", derive_params(Family.F1, -1.0, -1.0), RegionSpec(RegionKind.HALFPLANE), 0.2),
        ("f3 b=-1 halfplane", derive_params(Family.F3, -1.0), RegionSpec(RegionKind.HALFPLANE), 1.0 / 3.0),
        ("f3 b=-1/3 halfplane", derive_params(Family.F3, -1.0 / 3.0), RegionSpec(RegionKind.HALFPLANE), math.sqrt(2.0) - 1.0),
        ("f3 b=-1 parabola", derive_params(Family.F3, -1.0), RegionSpec(RegionKind.PARABOLA), 3.0 - 2.0 * math.sqrt(2.0)),
        (
            "f1 b=c=-1 lemniscate",
            derive_params(Family.F1, -1.0, -1.0),
            RegionSpec(RegionKind.LEMNISCATE),
            (-5.0 + math.sqrt(33.0 - 4.0 * math.sqrt(2.0))) / (2.0 * math.sqrt(2.0)),
        ),
    ]
    failures = []
    for label, params, region, value in expected:
        got = radius_by_crossing(params, region, scan_n=solver.scan_n, tol=solver.tol).radius
        if abs(got - value) > EXACT_TOL:
            failures.append(f"{label}: got {got:.15g}, expected {value:.15g}")
    return _result("exact-values", failures, len(expected))


def check_statement_agreement(config: StarlikeConfig, report: VerificationReport) -> CheckResult:
    """Envelope crossing against the displayed equations over the coefficient grid.

    Equations listed in :data:`statements.DISCREPANCIES` are compared in their
    proof form; the printed form's deviation goes to the discrepancy report.
    """

    solver = config.solver
    options = dict(scan_n=solver.scan_n, tol=solver.tol, r_max=solver.r_max, secant_maxiter=solver.secant_maxiter)
    failures: List[str] = []
    cases = 0
    worst = {item: 0.0 for item in statements.DISCREPANCIES}
    for family in Family:
        for params in admissible_params(family):
            for region in _regions(family):
                cases += 1
                crossing = radius_by_crossing(params, region, **options)
                flagged = next(
                    (item for item in statements.DISCREPANCIES if item.family is family and item.region is region.kind),
                    None,
                )
                variant = "proof" if flagged is not None else "printed"
                stated = statements.radius_by_statement(params, region, variant=variant, **options)
                diff = abs(crossing.radius - stated.radius)
                if not diff <= AGREEMENT_TOL:
                    failures.append(
                        f"{params.describe()} {region.label()}: crossing {crossing.radius:.12g} "
                        f"vs {variant} equation {stated.radius:.12g}"
                    )
                if flagged is not None:
                    printed = statements.radius_by_statement(params, region, variant="printed", **options)
                    worst[flagged] = max(worst[flagged], abs(printed.radius - crossing.radius))
    for item, gap in worst.items():
        report.discrepancies.append(
            f"{item.family.value} {item.region.value}: {item.term} printed {item.printed}, "
            f"proof {item.proof}; largest radius gap on the grid {gap:.3g}"
        )
    return _result("statement-agreement", failures, cases)


def check_specializations(config: StarlikeConfig) -> CheckResult:
    solver = config.solver
    failures: List[str] = []
    cases = 0
    for family in Family:
        params = derive_params(family, -1.0, -1.0)
        for region in _regions(family):
            closed = statements.specialized_radius(params, region)
            if closed is None:
                continue
            cases += 1
            got = radius_by_crossing(params, region, scan_n=solver.scan_n, tol=solver.tol).radius
            if abs(got - closed) > SPECIALIZATION_TOL:
                failures.append(f"{family.value} {region.label()}: crossing {got:.15g} vs closed form {closed:.15g}")
    return _result("specializations", failures, cases)


def check_lemma_bound(config: StarlikeConfig) -> CheckResult:
    """Logarithmic-derivative bound of the coefficient lemma, relative to the bound."""

    rtol = config.oracle.lemma_rtol
    failures: List[str] = []
    cases = 0
    for b in (0.0, 0.25, 0.5, 0.75, 1.0):
        for alpha in (0.0, 0.25, 0.5, 0.75):
            cases += 1
            excess = lemma1_check(b, alpha)
            if excess > rtol:
                failures.append(f"b={b:g} alpha={alpha:g}: relative excess {excess:.3g} over the bound")
    return _result("coefficient-lemma", failures, cases)


def check_extremals(seed: int = 0) -> CheckResult:
    """Extremal construction, factor identities and pinned second coefficients."""

    rng = np.random.default_rng(seed)
    z = 0.9 * np.sqrt(rng.random(1000)) * np.exp(2j * math.pi * rng.random(1000))
    failures: List[str] = []
    cases = 0
    for family in (Family.F1, Family.F3):
        for params in admissible_params(family):
            for side in Side:
                cases += 1
                extremal = build_extremal(params, side)
                p, h = extremal.factors()
                if family is Family.F1:
                    assert extremal.g is not None and h is not None
                    lhs = extremal.f(z)
                    rhs = z * p(z) / (1.0 + z) * h(z)
                    gz = extremal.g(z)
                    identity = np.abs(p(z) - (1.0 + z) * gz / z)
                else:
                    lhs = p(z)
                    rhs = (1.0 + z) * extremal.f(z) / z
                    identity = np.zeros(1)
                scale = 1.0 + np.abs(lhs)
                if np.max(np.abs(lhs - rhs) / scale) > DECOMPOSITION_TOL or np.max(identity / scale) > DECOMPOSITION_TOL:
                    failures.append(f"{params.describe()} {side.value}: factor identity broken")
                a2, g2 = extremal.second_coefficients()
                want_a2, want_g2 = params.second_coefficients
                if abs(a2 - want_a2) > DECOMPOSITION_TOL or (want_g2 is not None and abs(float(g2) - want_g2) > DECOMPOSITION_TOL):
                    failures.append(f"{params.describe()} {side.value}: second coefficients {a2:g}, {g2}")
    return _result("extremals", failures, cases)


_SHARP_POINTS = {
    Family.F1: ((-1.0, -1.0), (-0.8, -1.0), (-0.5, -0.5)),
    Family.F3: ((-1.0, 0.0), (-0.5, 0.0)),
}


def check_sharpness(config: StarlikeConfig) -> CheckResult:
    """Contact of the extremal with the boundary where the theorem claims it."""

    solver = config.solver
    failures: List[str] = []
    cases = 0
    for family, points in _SHARP_POINTS.items():
        for b, c in points:
            params = derive_params(family, b, c)
            for region in _regions(family, gamma=1.0):
                if not sharpness_claimed(family, region) or not envelope_attained(params, contact_side(region)):
                    continue
                cases += 1
                r_star = radius_by_crossing(params, region, scan_n=solver.scan_n, tol=solver.tol).radius
                outcome = verify_sharpness(params, region, r_star)
                if not outcome.ok:
                    failures.append(f"{params.describe()} {region.label()}: contact gap {outcome.gap:.3g}")
    return _result("sharpness", failures, cases)


def check_monotonicity(config: StarlikeConfig) -> CheckResult:
    """Radius decreases in the envelope parameters and in alpha; sector at gamma=1 is the half-plane."""

    solver = config.solver
    options = dict(scan_n=solver.scan_n, tol=solver.tol)
    halfplane = RegionSpec(RegionKind.HALFPLANE)
    failures: List[str] = []
    cases = 0
    steps = (0.0, 0.5, 1.0, 1.5, 2.0)
    for cp in steps:
        radii = [radius_by_crossing(envelope_params(Family.F1, cp=cp, d=d), halfplane, **options).radius for d in steps]
        cases += 1
        if any(later > earlier + 1e-12 for earlier, later in zip(radii, radii[1:])):
            failures.append(f"f1 cp={cp:g}: radius not non-increasing in d: {radii}")
    for d in steps:
        radii = [radius_by_crossing(envelope_params(Family.F1, cp=cp, d=d), halfplane, **options).radius for cp in steps]
        cases += 1
        if any(later > earlier + 1e-12 for earlier, later in zip(radii, radii[1:])):
            failures.append(f"f1 d={d:g}: radius not non-increasing in cp: {radii}")

    for family in Family:
        for params in admissible_params(family):
            cases += 1
            radii = [
                radius_by_crossing(params, RegionSpec(RegionKind.HALFPLANE, alpha=alpha), **options).radius
                for alpha in (0.0, 0.25, 0.5, 0.75)
            ]
            if any(later >= earlier for earlier, later in zip(radii, radii[1:])):
                failures.append(f"{params.describe()}: radius not decreasing in alpha: {radii}")
            if family is Family.F3:
                continue
            cases += 1
            sector = radius_by_crossing(params, RegionSpec(RegionKind.SECTOR, gamma=1.0), **options).radius
            if abs(sector - radii[0]) > SPECIALIZATION_TOL:
                failures.append(f"{params.describe()}: sector(gamma=1) {sector:.15g} vs half-plane {radii[0]:.15g}")
    return _result("monotonicity", failures, cases)


def check_disk_bounds() -> CheckResult:
    """A few containment radii with known values."""

    failures: List[str] = []
    expected = [
        (RegionSpec(RegionKind.RATIONAL_RL), 1.0, 0.285925),
        (RegionSpec(RegionKind.HALFPLANE, alpha=0.5), 1.2, 0.7),
        (RegionSpec(RegionKind.LEMNISCATE), 1.0, math.sqrt(2.0) - 1.0),
    ]
    for region, a, value in expected:
        got = disk_bound(region, a)
        if abs(got - value) > 1e-6:
            failures.append(f"{region.label()} at a={a:g}: {got:.9g} vs {value:.9g}")
    return _result("disk-bounds", failures, len(expected))


_DUAL_KINDS = (
    RegionKind.LEMNISCATE,
    RegionKind.PARABOLA,
    RegionKind.LUNE,
    RegionKind.HALFPLANE,
    RegionKind.SIGMOID,
)


def check_region_geometry(config: StarlikeConfig, seed: int = 0) -> CheckResult:
    """Closed-form predicates against the winding test, and disks inside their bound."""

    rng = np.random.default_rng(seed)
    n_boundary, edge_eps = config.regions.n_boundary, config.regions.edge_eps
    failures: List[str] = []
    cases = 0
    for kind in _DUAL_KINDS:
        region = RegionSpec(kind)
        w = rng.uniform(-1.0, 3.0, 10_000) + 1j * rng.uniform(-2.0, 2.0, 10_000)
        codes = classify(region, w, n_boundary, edge_eps)
        decided = codes != INDETERMINATE
        cases += 1
        mismatched = np.flatnonzero((codes[decided] == INSIDE) != contains_many(region, w[decided]))
        if mismatched.size:
            first = complex(w[decided][mismatched[0]])
            failures.append(f"{region.label()}: {mismatched.size} points disagree, first {first:.6g}")

    phases = np.exp(2j * math.pi * np.arange(64) / 64)
    for _ in range(200):
        region = RegionSpec(ALL_KINDS[rng.integers(len(ALL_KINDS))], alpha=0.2, gamma=0.6)
        a = float(rng.uniform(1.0, min(region.center_cap, 3.0)))
        bound = disk_bound(region, a)
        if bound <= 0.0:
            continue
        cases += 1
        rho = float(rng.uniform(0.0, 0.999)) * bound
        if not contains_many(region, a + rho * phases, n_samples=n_boundary, edge_eps=edge_eps).all():
            failures.append(f"{region.label()}: disk about {a:.6g} of radius {rho:.6g} leaves the region")
    return _result("region-geometry", failures, cases)


def check_oracle(config: StarlikeConfig) -> CheckResult:
    """Brute-force radii of the extremals against the analytic radius."""

    solver = config.solver
    failures: List[str] = []
    cases = 0
    for family, b, c in ORACLE_POINTS:
        params = derive_params(family, b, c)
        for region in _regions(family, gamma=1.0):
            measured = oracle_radius(params, region, config)
            if measured is None:
                continue
            cases += 1
            analytic = radius_by_crossing(params, region, scan_n=solver.scan_n, tol=solver.tol).radius
            if measured < analytic - ORACLE_SLACK:
                failures.append(f"{params.describe()} {region.label()}: brute {measured:.6f} below analytic {analytic:.6f}")
            side = contact_side(region)
            if sharpness_claimed(family, region) and envelope_attained(params, side):
                if abs(measured - analytic) > ORACLE_SLACK:
                    failures.append(f"{params.describe()} {region.label()}: brute {measured:.6f} vs sharp {analytic:.6f}")
    return _result("oracle", failures, cases)


# -- suite ---------------------------------------------------------------------------

def run_verification(config: StarlikeConfig, *, skip_oracle: bool = False) -> VerificationReport:
    report = VerificationReport()
    steps: List[Callable[[], CheckResult]] = [
        lambda: check_exact_values(config),
        lambda: check_statement_agreement(config, report),
        lambda: check_specializations(config),
        lambda: check_lemma_bound(config),
        check_extremals,
        lambda: check_sharpness(config),
        lambda: check_monotonicity(config),
        check_disk_bounds,
        lambda: check_region_geometry(config),
    ]
    if not skip_oracle:
        steps.append(lambda: check_oracle(config))
    for step in steps:
        report.checks.append(step())
    return report


def render_report(report: VerificationReport) -> str:
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        suffix = f"  {check.detail}" if check.detail else ""
        lines.append(f"{status} {check.name} ({check.cases} cases){suffix}")
    lines.append(f"discrepancies: {len(report.discrepancies)}")
    lines.extend(f"  {entry}" for entry in report.discrepancies)
    return "\n".join(lines) + "\n"


def raise_for_failures(report: VerificationReport) -> None:
    failures = report.failures
    if failures:
        first = failures[0]
        raise VerificationError(first.name, first.detail)
