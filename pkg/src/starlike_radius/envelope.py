"""Class parameters, growth envelope and radius by envelope crossing."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union, overload

import numpy as np
from numpy.typing import NDArray

from .core.errors import DomainError, NoRootError, ParameterError, UnsupportedPairError
from .regions import ALL_KINDS, RegionKind, RegionSpec, threshold
from .rootfind import smallest_root

__all__ = [
    "Family",
    "Method",
    "ClassParams",
    "RadiusResult",
    "R_MAX",
    "HYPOTHESIS_SLACK",
    "derive_params",
    "envelope_params",
    "growth",
    "margin",
    "supported_regions",
    "check_supported",
    "radius_by_crossing",
]

logger = logging.getLogger(__name__)

R_MAX = 1.0 - 1e-9
HYPOTHESIS_SLACK = 1e-12

FloatOrArray = Union[float, NDArray[np.float64]]


class Family(str, Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"

    def __str__(self) -> str:
        return self.value


class Method(str, Enum):
    STATEMENT = "statement-polynomial"
    CROSSING = "envelope-crossing"

    def __str__(self) -> str:
        return self.value


_F3_REGIONS = (RegionKind.HALFPLANE, RegionKind.LEMNISCATE, RegionKind.PARABOLA, RegionKind.EXPONENTIAL)


@dataclass(frozen=True, slots=True)
class ClassParams:
    """Fixed coefficients of a class and the envelope parameters derived from them.

    ``cp`` is |3c+1|, ``d`` is |5b-3c|, ``dp`` is |3c-4b| and ``bp`` is |1+3b|;
    only the ones a family uses are set.
    """

    family: Family
    b: float
    c: float = 0.0
    cp: Optional[float] = None
    d: Optional[float] = None
    dp: Optional[float] = None
    bp: Optional[float] = None
    warning: str = field(default="", compare=False)

    @property
    def s(self) -> float:
        """Sum of the two envelope parameters (F1, F2)."""

        if self.family is Family.F1:
            return float(self.cp) + float(self.d)  # type: ignore[arg-type]
        if self.family is Family.F2:
            return float(self.cp) + float(self.dp)  # type: ignore[arg-type]
        raise DomainError("family f3 has a single envelope parameter")

    @property
    def p(self) -> float:
        """Product of the two envelope parameters (F1, F2)."""

        if self.family is Family.F1:
            return float(self.cp) * float(self.d)  # type: ignore[arg-type]
        if self.family is Family.F2:
            return float(self.cp) * float(self.dp)  # type: ignore[arg-type]
        raise DomainError("family f3 has a single envelope parameter")

    @property
    def second_coefficients(self) -> Tuple[float, Optional[float]]:
        """Pinned z**2 coefficients (of f, and of g where the class has one)."""

        if self.family is Family.F1:
            return 5.0 * self.b, 3.0 * self.c
        if self.family is Family.F2:
            return 4.0 * self.b, 3.0 * self.c
        return 3.0 * self.b, None

    def describe(self) -> str:
        if self.family is Family.F3:
            return f"f3(b={self.b:g}; bp={self.bp:g})"
        second = f"d={self.d:g}" if self.family is Family.F1 else f"dp={self.dp:g}"
        return f"{self.family.value}(b={self.b:g}, c={self.c:g}; cp={self.cp:g}, {second})"


@dataclass(frozen=True, slots=True)
class RadiusResult:
    """Radius with its provenance.

    ``whole_disk`` marks the outcome where the margin never changes sign, in
    which case ``radius`` is the solver cap.
    """

    radius: float
    method: Method
    residual: float
    bracket: Tuple[float, float]
    oracle_radius: Optional[float] = None
    whole_disk: bool = False

    def with_oracle(self, value: float) -> "RadiusResult":
        return RadiusResult(
            radius=self.radius,
            method=self.method,
            residual=self.residual,
            bracket=self.bracket,
            oracle_radius=value,
            whole_disk=self.whole_disk,
        )


def _check_unit(name: str, value: float) -> float:
    number = float(value)
    if not math.isfinite(number) or abs(number) > 1.0:
        raise DomainError(f"|{name}| must not exceed 1, got {value!r}")
    return number


def _check_hypothesis(name: str, value: float, strict: bool, notes: list[str]) -> None:
    if value <= 2.0 + HYPOTHESIS_SLACK:
        return
    message = f"{name} = {value:.12g} exceeds 2; the radius result does not apply"
    if strict:
        raise ParameterError(message)
    notes.append(message)


def derive_params(family: Family | str, b: float, c: float = 0.0, *, strict: bool = True) -> ClassParams:
    """Validate the fixed coefficients and derive the envelope parameters.

    With ``strict=False`` an envelope parameter above 2 is recorded in
    ``warning`` instead of raising :class:`ParameterError`; the envelope is
    still evaluated, but the resulting radius carries no guarantee.
    """

    fam = Family(family)
    b_val = _check_unit("b", b)
    notes: list[str] = []
    if fam is Family.F3:
        bp = abs(1.0 + 3.0 * b_val)
        _check_hypothesis("bp", bp, strict, notes)
        c_val = float(c) if c is not None and math.isfinite(float(c)) else 0.0
        return ClassParams(family=fam, b=b_val, c=c_val, bp=bp, warning="; ".join(notes))

    c_val = _check_unit("c", c)
    cp = abs(3.0 * c_val + 1.0)
    _check_hypothesis("cp", cp, strict, notes)
    if fam is Family.F1:
        d = abs(5.0 * b_val - 3.0 * c_val)
        _check_hypothesis("d", d, strict, notes)
        return ClassParams(family=fam, b=b_val, c=c_val, cp=cp, d=d, warning="; ".join(notes))

    dp = abs(3.0 * c_val - 4.0 * b_val)
    _check_hypothesis("dp", dp, strict, notes)
    if 1.0 + HYPOTHESIS_SLACK < dp <= 2.0 + HYPOTHESIS_SLACK:
        notes.append(f"dp = {dp:.12g} > 1 exceeds the coefficient bound of the quotient factor")
    if notes:
        logger.warning("f2 with b=%g c=%g: %s", b_val, c_val, "; ".join(notes))
    return ClassParams(family=fam, b=b_val, c=c_val, cp=cp, dp=dp, warning="; ".join(notes))


def envelope_params(
    family: Family | str,
    *,
    cp: float | None = None,
    d: float | None = None,
    dp: float | None = None,
    bp: float | None = None,
) -> ClassParams:
    """Build parameters directly from envelope values in ``[0, 2]``.

    ``b`` and ``c`` are left as ``nan`` since several coefficient pairs map to
    the same envelope.
    """

    fam = Family(family)
    needed = {Family.F1: ("cp", "d"), Family.F2: ("cp", "dp"), Family.F3: ("bp",)}[fam]
    given = {"cp": cp, "d": d, "dp": dp, "bp": bp}
    values: dict[str, float] = {}
    for name in needed:
        value = given[name]
        if value is None or not math.isfinite(value) or not 0.0 <= value <= 2.0 + HYPOTHESIS_SLACK:
            raise ParameterError(f"{fam.value} needs {name} in [0, 2], got {value!r}")
        values[name] = float(value)
    nan = float("nan")
    return ClassParams(family=fam, b=nan, c=nan, **values)


def _pair_term(q: float, r: NDArray[np.float64]) -> NDArray[np.float64]:
    return (q * r * r + 4.0 * r + q) / (r * r + q * r + 1.0)


def _envelope(params: ClassParams, r: NDArray[np.float64]) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    one_minus = 1.0 - r * r
    if params.family is Family.F1:
        bracket = _pair_term(float(params.cp), r) + _pair_term(float(params.d), r) + 1.0
    elif params.family is Family.F2:
        dp = float(params.dp)
        bracket = _pair_term(float(params.cp), r) + (dp * r * r + 2.0 * r + dp) / (dp * r + 1.0) + 1.0
    else:
        bracket = _pair_term(float(params.bp), r) + 1.0
    return 1.0 / one_minus, r / one_minus * bracket


def _as_radii(r: FloatOrArray) -> NDArray[np.float64]:
    radii = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(radii)) or np.any(radii < 0.0) or np.any(radii > R_MAX):
        raise DomainError(f"r must lie in [0, {R_MAX!r}], got {r!r}")
    return radii


@overload
def growth(params: ClassParams, r: float) -> Tuple[float, float]: ...


@overload
def growth(params: ClassParams, r: NDArray[np.float64]) -> Tuple[NDArray[np.float64], NDArray[np.float64]]: ...


def growth(params: ClassParams, r: FloatOrArray) -> Tuple[FloatOrArray, FloatOrArray]:
    """Center ``a = 1/(1-r**2)`` and radius ``L`` of the disk containing zf'/f on |z| = r."""

    radii = _as_radii(r)
    a, L = _envelope(params, radii)
    if radii.ndim == 0:
        return float(a), float(L)
    return a, L


def supported_regions(family: Family | str) -> Tuple[RegionKind, ...]:
    fam = Family(family)
    return _F3_REGIONS if fam is Family.F3 else ALL_KINDS


def check_supported(params: ClassParams, region: RegionSpec) -> None:
    if region.kind not in supported_regions(params.family):
        raise UnsupportedPairError(params.family, region.kind)


def margin(params: ClassParams, region: RegionSpec, r: FloatOrArray) -> FloatOrArray:
    """Containment threshold at ``a(r)`` minus ``L(r)``; ``-inf`` where no disk exists."""

    check_supported(params, region)
    radii = _as_radii(r)
    a, L = _envelope(params, radii)
    value = threshold(region, a) - L
    if radii.ndim == 0:
        return float(value)
    return value


def radius_by_crossing(
    params: ClassParams,
    region: RegionSpec,
    *,
    scan_n: int = 4096,
    tol: float = 1e-12,
    r_max: float = R_MAX,
    secant_maxiter: int = 50,
) -> RadiusResult:
    """First zero of :func:`margin` on ``(0, r_max)``."""

    check_supported(params, region)

    def f(r: FloatOrArray) -> FloatOrArray:
        radii = np.asarray(r, dtype=float)
        a, L = _envelope(params, radii)
        value = threshold(region, a) - L
        return float(value) if radii.ndim == 0 else value

    try:
        root = smallest_root(f, 0.0, r_max, scan_n, tol, secant_maxiter=secant_maxiter, vectorized=True)
    except NoRootError:
        logger.info("%s on %s: margin keeps its sign on (0, %r)", params.describe(), region.label(), r_max)
        return RadiusResult(
            radius=r_max,
            method=Method.CROSSING,
            residual=float("nan"),
            bracket=(r_max, 1.0),
            whole_disk=True,
        )
    logger.debug("%s on %s: crossing at %.15g (residual %.3g)", params.describe(), region.label(), root.root, root.residual)
    return RadiusResult(
        radius=root.root,
        method=Method.CROSSING,
        residual=root.residual,
        bracket=(root.lo, root.hi),
    )
