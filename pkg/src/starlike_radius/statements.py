"""Radius equations as displayed in the theorem statements, for cross-checking."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .core.errors import DomainError, NoRootError
from .envelope import (
    HYPOTHESIS_SLACK,
    R_MAX,
    ClassParams,
    Family,
    Method,
    RadiusResult,
    check_supported,
)
from .regions import SQRT2, RegionKind, RegionSpec, threshold
from .rootfind import Polynomial, make_polynomial, smallest_root

__all__ = [
    "VARIANTS",
    "Discrepancy",
    "DISCREPANCIES",
    "StatementEquation",
    "statement_equation",
    "radius_by_statement",
    "is_specialization",
    "specialized_radius",
]

logger = logging.getLogger(__name__)

VARIANTS = ("printed", "proof")

E = math.e
SIN1 = math.sin(1.0)
R2 = SQRT2

Coefficients = List[float]


@dataclass(frozen=True, slots=True)
class Discrepancy:
    """A displayed equation whose statement and proof disagree."""

    family: Family
    region: RegionKind
    term: str
    printed: str
    proof: str


DISCREPANCIES: Tuple[Discrepancy, ...] = (
    Discrepancy(Family.F1, RegionKind.RATIONAL_R, "r^4 coefficient", "(4+2*sqrt2)*cp*d", "(4-2*sqrt2)*cp*d"),
    Discrepancy(Family.F2, RegionKind.LEMNISCATE, "r^5 coefficient", "(1+sqrt2)", "(1+sqrt2)*dp"),
)


def _flagged(family: Family, kind: RegionKind) -> bool:
    return any(item.family is family and item.region is kind for item in DISCREPANCIES)


# -- first family ----------------------------------------------------------------

def _f1(params: ClassParams, region: RegionSpec, variant: str) -> Coefficients:
    s, p = params.s, params.p
    kind = region.kind
    if kind is RegionKind.HALFPLANE:
        a = region.alpha
        return [a - 1, 1 + a * s, 6 + a + s + (1 + a) * p, 2 + 5 * s + p, 7 - a + s + (2 - a) * p, 1 + (1 - a) * s, -a]
    if kind is RegionKind.LEMNISCATE:
        return [
            1 - R2,
            1 + (2 - R2) * s,
            10 - R2 + s + (3 - R2) * p,
            2 + 7 * s + p,
            9 + R2 + s + (2 + R2) * p,
            1 + (1 + R2) * s,
            R2,
        ]
    if kind is RegionKind.PARABOLA:
        return [-1, 2 + s, 13 + 2 * s + 3 * p, 4 + 10 * s + 2 * p, 13 + 2 * s + 3 * p, 2 + s, -1]
    if kind is RegionKind.EXPONENTIAL:
        return [
            1 - E,
            E + s,
            6 * E + 1 + E * s + (E + 1) * p,
            2 * E + 5 * E * s + E * p,
            7 * E - 1 + E * s + (2 * E - 1) * p,
            E + (E - 1) * s,
            -1,
        ]
    if kind is RegionKind.CARDIOID:
        return [-2, 3 + s, 19 + 3 * s + 4 * p, 6 + 15 * s + 3 * p, 20 + 3 * s + 5 * p, 3 + 2 * s, -1]
    if kind is RegionKind.SINE:
        return [
            -SIN1,
            1 + (1 - SIN1) * s,
            9 - SIN1 + s + (2 - SIN1) * p,
            2 + 7 * s + p,
            10 + SIN1 + s + (3 + SIN1) * p,
            1 + (2 + SIN1) * s,
            1 + SIN1,
        ]
    if kind is RegionKind.LUNE:
        return [
            R2 - 2,
            1 + (R2 - 1) * s,
            5 + R2 + s + R2 * p,
            2 + 5 * s + p,
            8 - R2 + s + (3 - R2) * p,
            1 + (2 - R2) * s,
            -(R2 - 1),
        ]
    if kind is RegionKind.RATIONAL_R:
        quartic_p = (4 + 2 * R2) if variant == "printed" else (4 - 2 * R2)
        return [
            2 * R2 - 3,
            1 + (2 * R2 - 2) * s,
            4 + 2 * R2 + s + (2 * R2 - 1) * p,
            2 + 5 * s + p,
            9 - 2 * R2 + s + quartic_p * p,
            1 + (3 - 2 * R2) * s,
            -(2 * R2 - 2),
        ]
    if kind is RegionKind.SECTOR:
        sg = math.sin(math.pi * region.gamma / 2.0)
        return [
            -sg,
            1 + (1 - sg) * s,
            8 - 2 * sg + s + (2 - sg) * p,
            2 + (6 - sg) * s + p,
            8 - sg + s + 2 * p,
            1 + s,
        ]
    if kind is RegionKind.NEPHROID:
        return [-2, 3 + s, 25 + 3 * s + 4 * p, 6 + 21 * s + 3 * p, 32 + 3 * s + 11 * p, 3 + 8 * s, 5]
    if kind is RegionKind.SIGMOID:
        return [
            1 - E,
            1 + E + 2 * s,
            10 + 8 * E + (1 + E) * s + (3 + E) * p,
            (1 + E) * (2 + p) + 7 * (1 + E) * s,
            9 + 11 * E + (1 + E) * s + 2 * (1 + 2 * E) * p,
            1 + E + (1 + 3 * E) * s,
            2 * E,
        ]
    raise DomainError(f"no polynomial statement for {kind.value}")


# -- second family ---------------------------------------------------------------

def _f2(params: ClassParams, region: RegionSpec, variant: str) -> Coefficients:
    s, p = params.s, params.p
    cp, dp = float(params.cp), float(params.dp)  # type: ignore[arg-type]
    kind = region.kind
    if kind is RegionKind.HALFPLANE:
        a = region.alpha
        return [
            a - 1,
            1 + a * s,
            5 + s + (1 + a) * p,
            1 + (3 - a) * cp + 5 * dp + p,
            (2 - a) * (1 + p) + dp,
            (1 - a) * dp,
        ]
    if kind is RegionKind.LEMNISCATE:
        quintic = (1 + R2) if variant == "printed" else (1 + R2) * dp
        return [
            1 - R2,
            1 + (2 - R2) * s,
            7 + s + (3 - R2) * p,
            1 + (3 + R2) * cp + 7 * dp + p,
            R2 * (1 + R2) * (1 + p) + dp,
            quintic,
        ]
    if kind is RegionKind.PARABOLA:
        return [-1, 2 + s, 10 + 2 * s + 3 * p, 2 + 5 * cp + 10 * dp + 2 * p, 3 + 2 * dp + 3 * p, dp]
    if kind is RegionKind.EXPONENTIAL:
        return [
            1 - E,
            E + s,
            5 * E + E * s + (E + 1) * p,
            E + (3 * E - 1) * cp + 5 * E * dp + E * p,
            (2 * E - 1) * (1 + p) + E * dp,
            (E - 1) * dp,
        ]
    if kind is RegionKind.CARDIOID:
        return [-2, 3 + s, 15 + 3 * s + 4 * p, 3 + 8 * cp + 15 * dp + 3 * p, 5 + 3 * dp + 5 * p, 2 * dp]
    if kind is RegionKind.SINE:
        return [
            -SIN1,
            1 + (1 - SIN1) * s,
            7 + s + (2 - SIN1) * p,
            1 + (4 + SIN1) * cp + 7 * dp + p,
            (3 + SIN1) * (1 + p) + dp,
            (2 + SIN1) * dp,
        ]
    if kind is RegionKind.LUNE:
        return [
            R2 - 2,
            1 + (R2 - 1) * s,
            5 + s + R2 * p,
            1 + (4 - R2) * cp + 5 * dp + p,
            (3 - R2) * (1 + p) + dp,
            (2 - R2) * dp,
        ]
    if kind is RegionKind.RATIONAL_R:
        return [
            2 * R2 - 3,
            1 + (2 * R2 - 2) * s,
            5 + s + (2 * R2 - 1) * p,
            1 + (5 - 2 * R2) * cp + 5 * dp + p,
            (4 - 2 * R2) * (1 + p) + dp,
            (3 - 2 * R2) * dp,
        ]
    if kind is RegionKind.SECTOR:
        sg = math.sin(math.pi * region.gamma / 2.0)
        return [
            -sg,
            1 + (1 - sg) * s,
            6 - sg + s + (2 - sg) * p,
            1 + 3 * cp + (6 - sg) * dp + p,
            2 + dp + 2 * p,
            dp,
        ]
    if kind is RegionKind.NEPHROID:
        return [-2, 3 + s, 21 + 3 * s + 4 * p, 3 + 14 * cp + 21 * dp + 3 * p, 11 * (1 + p) + 3 * dp, 8 * dp]
    if kind is RegionKind.SIGMOID:
        return [
            1 - E,
            1 + E + 2 * s,
            7 * (1 + E) + (1 + E) * s + (3 + E) * p,
            (1 + E) * (1 + p) + (3 + 5 * E) * cp + 7 * (1 + E) * dp,
            2 * (1 + 2 * E) * (1 + p) + (1 + E) * dp,
            (1 + 3 * E) * dp,
        ]
    raise DomainError(f"no polynomial statement for {kind.value}")


# -- third family ----------------------------------------------------------------

def _f3(params: ClassParams, region: RegionSpec, variant: str) -> Coefficients:
    bp = float(params.bp)  # type: ignore[arg-type]
    kind = region.kind
    if kind is RegionKind.HALFPLANE:
        a = region.alpha
        return [a - 1, 1 + a * bp, 3 + bp, 1 + (1 - a) * bp, -a]
    if kind is RegionKind.LEMNISCATE:
        return [1 - R2, 1 + (2 - R2) * bp, 5 + bp, 1 + (1 + R2) * bp, R2]
    if kind is RegionKind.PARABOLA:
        return [-1, 2 + bp, 6 + 2 * bp, 2 + bp, -1]
    if kind is RegionKind.EXPONENTIAL:
        return [1 - E, E + bp, E * (3 + bp), E + (E - 1) * bp, -1]
    raise DomainError(f"no statement for f3 and {kind.value}")  # pragma: no cover


_POLYNOMIAL_BUILDERS: Dict[Family, Callable[[ClassParams, RegionSpec, str], Coefficients]] = {
    Family.F1: _f1,
    Family.F2: _f2,
    Family.F3: _f3,
}


# -- the nested-radical region ------------------------------------------------------

def _rational_rl(params: ClassParams) -> Callable[[np.ndarray], np.ndarray]:
    s, p = params.s, params.p
    if params.family is Family.F1:
        numerator = Polynomial([0.0, 1 + s, 8 + s + 2 * p, 2 + 6 * s + p, 8 + s + 2 * p, 1 + s])
        denominator = Polynomial([1.0, s, 2 + p, s, 1.0])
    else:
        cp, dp = float(params.cp), float(params.dp)  # type: ignore[arg-type]
        numerator = Polynomial([0.0, 1 + s, 6 + s + 2 * p, 1 + 3 * cp + 6 * dp + p, 2 + dp + 2 * p, dp])
        denominator = Polynomial([1.0, s, 1 + p, dp])

    def equation(r: np.ndarray) -> np.ndarray:
        radii = np.asarray(r, dtype=float)
        one_minus = 1.0 - radii * radii
        shift = R2 - R2 * radii * radii - 1.0
        with np.errstate(invalid="ignore"):
            root = np.sqrt(one_minus**2 - shift**2)
        bracket = one_minus * root - one_minus**2 + shift**2
        return numerator(radii) ** 2 - denominator(radii) ** 2 * bracket

    return equation


@dataclass(frozen=True, slots=True)
class StatementEquation:
    """Left-hand side of a displayed radius equation.

    Polynomial for every region except the nested-radical one, which is kept
    as a plain function of ``r``.
    """

    family: Family
    region: RegionSpec
    variant: str
    polynomial: Optional[Polynomial]
    function: Optional[Callable[[np.ndarray], np.ndarray]]
    flagged: bool

    @property
    def coefficients(self) -> Optional[List[float]]:
        return None if self.polynomial is None else [float(x) for x in self.polynomial.coef]

    def __call__(self, r: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        radii = np.asarray(r, dtype=float)
        if self.polynomial is not None:
            value = self.polynomial(radii)
        else:
            assert self.function is not None
            value = self.function(radii)
        return float(value) if radii.ndim == 0 else np.asarray(value, dtype=float)


def statement_equation(params: ClassParams, region: RegionSpec, variant: str = "printed") -> StatementEquation:
    """Build the displayed radius equation for ``params`` and ``region``.

    ``variant="proof"`` substitutes the coefficients used in the proofs for the
    equations listed in :data:`DISCREPANCIES`; all other equations are the same
    in both variants.
    """

    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    check_supported(params, region)
    flagged = _flagged(params.family, region.kind)
    if region.kind is RegionKind.RATIONAL_RL:
        return StatementEquation(params.family, region, variant, None, _rational_rl(params), flagged)
    coeffs = _POLYNOMIAL_BUILDERS[params.family](params, region, variant)
    return StatementEquation(params.family, region, variant, make_polynomial(coeffs), None, flagged)


def radius_by_statement(
    params: ClassParams,
    region: RegionSpec,
    *,
    variant: str = "printed",
    scan_n: int = 4096,
    tol: float = 1e-12,
    r_max: float = R_MAX,
    secant_maxiter: int = 50,
) -> RadiusResult:
    """Smallest root in ``(0, r_max)`` of the displayed equation."""

    equation = statement_equation(params, region, variant)
    try:
        root = smallest_root(equation, 0.0, r_max, scan_n, tol, secant_maxiter=secant_maxiter, vectorized=True)
    except NoRootError:
        return RadiusResult(radius=r_max, method=Method.STATEMENT, residual=float("nan"), bracket=(r_max, 1.0), whole_disk=True)
    if equation.flagged and variant == "printed":
        logger.warning(
            "%s on %s: displayed equation differs from its proof; radius %.12g is informational",
            params.describe(),
            region.label(),
            root.root,
        )
    return RadiusResult(radius=root.root, method=Method.STATEMENT, residual=root.residual, bracket=(root.lo, root.hi))


# -- closed forms at b = c = -1 -------------------------------------------------------

_SPECIALIZATION: Dict[Family, Tuple[Tuple[str, float], ...]] = {
    Family.F1: (("cp", 2.0), ("d", 2.0)),
    Family.F2: (("cp", 2.0), ("dp", 1.0)),
    Family.F3: (("bp", 2.0),),
}

# (1 - r**2) * L(r) at the specialization, as (linear, quadratic) coefficients.
_REDUCED_ENVELOPE: Dict[Family, Tuple[float, float]] = {
    Family.F1: (5.0, 0.0),
    Family.F2: (4.0, 1.0),
    Family.F3: (3.0, 0.0),
}


def is_specialization(params: ClassParams) -> bool:
    """True when the derived parameters collapse the envelope to a quadratic."""

    return all(
        abs(float(getattr(params, name)) - value) <= HYPOTHESIS_SLACK for name, value in _SPECIALIZATION[params.family]
    )


def specialized_radius(params: ClassParams, region: RegionSpec) -> Optional[float]:
    """Closed-form radius at the specialization, or ``None`` when none applies.

    Every threshold except the nested-radical one is affine in the center,
    ``m*a + q``, so the radius equation reduces to the quadratic
    ``(m + q) - l1*r - (q + l2)*r**2 = 0``.
    """

    check_supported(params, region)
    if region.kind is RegionKind.RATIONAL_RL or not is_specialization(params):
        return None
    base = float(threshold(region, 1.0))
    slope = float(threshold(region, 2.0)) - base
    offset = base - slope
    l1, l2 = _REDUCED_ENVELOPE[params.family]
    quadratic = make_polynomial([slope + offset, -l1, -(offset + l2)])
    roots = [
        float(root.real)
        for root in np.atleast_1d(quadratic.roots())
        if abs(root.imag) <= 1e-12 and 0.0 < root.real < 1.0
    ]
    return min(roots) if roots else None
