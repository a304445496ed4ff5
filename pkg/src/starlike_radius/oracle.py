"""Independent checks: extremal functions, brute-force radii and sharpness contacts."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core.errors import (
    DomainError,
    ExtremalConstructionError,
    OracleError,
    PoleError,
    UnsupportedExtremalError,
)
from .core.levels import trace
from .envelope import ClassParams, Family, check_supported
from .regions import (
    INDETERMINATE,
    OUTSIDE,
    SQRT2,
    RegionKind,
    RegionSpec,
    classify,
    contains_many,
    polyline_radii,
)
from .rootfind import Polynomial

__all__ = [
    "RationalFunction",
    "SchwarzBlock",
    "Side",
    "Extremal",
    "SharpnessReport",
    "polar_grid",
    "build_extremal",
    "log_deriv",
    "brute_radius",
    "contact_side",
    "sharpness_claimed",
    "envelope_attained",
    "verify_sharpness",
    "lemma1_bound",
    "lemma1_check",
]

logger = logging.getLogger(__name__)

ComplexArray = NDArray[np.complex128]

_POLE_EPS = 1e-300
_DENOMINATOR_EPS = 1e-12


def _trailing_order(poly: Polynomial) -> Tuple[int, Polynomial]:
    """Split ``poly`` as ``z**m * rest`` with ``rest(0) != 0``."""

    coef = np.asarray(poly.coef, dtype=float)
    nonzero = np.flatnonzero(coef)
    if nonzero.size == 0:
        raise DomainError("the zero polynomial has no logarithmic derivative")
    m = int(nonzero[0])
    return m, Polynomial(coef[m:])


@dataclass(frozen=True, slots=True)
class RationalFunction:
    """Quotient of two real polynomials evaluated at complex arguments."""

    numerator: Polynomial
    denominator: Polynomial

    @classmethod
    def from_factors(cls, numerator: Sequence[Sequence[float]], denominator: Sequence[Sequence[float]]) -> "RationalFunction":
        """Multiply ascending-coefficient factors into a single quotient."""

        top = Polynomial([1.0])
        for factor in numerator:
            top = top * Polynomial(list(factor))
        bottom = Polynomial([1.0])
        for factor in denominator:
            bottom = bottom * Polynomial(list(factor))
        return cls(top, bottom)

    def __call__(self, z: ArrayLike) -> ComplexArray:
        values = np.asarray(z, dtype=np.complex128)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.numerator(values) / self.denominator(values)

    def log_deriv(self, z: ArrayLike) -> ComplexArray:
        """Vectorized ``z f'(z) / f(z)``; equals the order of the zero at the origin there."""

        values = np.asarray(z, dtype=np.complex128)
        m_top, top = _trailing_order(self.numerator)
        m_bottom, bottom = _trailing_order(self.denominator)
        with np.errstate(divide="ignore", invalid="ignore"):
            result = (
                (m_top - m_bottom)
                + values * top.deriv()(values) / top(values)
                - values * bottom.deriv()(values) / bottom(values)
            )
        return np.asarray(result, dtype=np.complex128)

    def series(self, order: int) -> NDArray[np.float64]:
        """Taylor coefficients ``c_0 .. c_order`` about the origin."""

        top = np.zeros(order + 1)
        n = min(order + 1, self.numerator.coef.size)
        top[:n] = self.numerator.coef[:n]
        bottom = np.zeros(order + 1)
        n = min(order + 1, self.denominator.coef.size)
        bottom[:n] = self.denominator.coef[:n]
        if bottom[0] == 0.0:
            raise PoleError(0.0)
        out = np.zeros(order + 1)
        for k in range(order + 1):
            out[k] = (top[k] - np.dot(bottom[1 : k + 1], out[k - 1 :: -1][:k])) / bottom[0]
        return out

    def min_denominator(self, z: ArrayLike) -> float:
        return float(np.abs(self.denominator(np.asarray(z, dtype=np.complex128))).min())


def log_deriv(f: RationalFunction, z: complex) -> complex:
    """Scalar ``z f'(z) / f(z)``; raises :class:`PoleError` at a zero of either factor."""

    point = complex(z)
    if not (math.isfinite(point.real) and math.isfinite(point.imag)):
        raise DomainError(f"z must be finite, got {z!r}")
    _, top = _trailing_order(f.numerator)
    _, bottom = _trailing_order(f.denominator)
    if abs(top(point)) <= _POLE_EPS or abs(bottom(point)) <= _POLE_EPS:
        raise PoleError(point)
    value = complex(f.log_deriv(np.array([point]))[0])
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise PoleError(point)
    return value


@dataclass(frozen=True, slots=True)
class SchwarzBlock:
    """The disk self-map ``z (z + a) / (1 + a z)`` with ``|a| <= 1``."""

    a: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.a) or abs(self.a) > 1.0 + 1e-12:
            raise DomainError(f"Schwarz block parameter must satisfy |a| <= 1, got {self.a!r}")

    def __call__(self, z: ArrayLike) -> ComplexArray:
        values = np.asarray(z, dtype=np.complex128)
        return values * (values + self.a) / (1.0 + self.a * values)

    def max_modulus(self, z: ArrayLike) -> float:
        return float(np.abs(self(z)).max())


class Side(str, Enum):
    """Which extreme of the envelope disk an extremal touches.

    ``LEFT`` evaluates at ``z = +r`` and reaches ``a - L``; ``RIGHT`` evaluates
    at ``z = -r`` and reaches ``a + L``.
    """

    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> float:
        return 1.0 if self is Side.LEFT else -1.0

    def __str__(self) -> str:
        return self.value


def polar_grid(n_theta: int, n_rad: int, r_max: float = 0.999) -> ComplexArray:
    """Points ``r_max * (k / n_rad) * exp(2 pi i j / n_theta)`` for k = 1..n_rad."""

    rho = r_max * np.arange(1, n_rad + 1) / n_rad
    phase = np.exp(2j * math.pi * np.arange(n_theta) / n_theta)
    return (rho[:, None] * phase[None, :]).ravel()


_MEMBERSHIP_GRID = polar_grid(128, 64)
# zeros on the unit circle of order up to four stay above the threshold here
_DENOMINATOR_GRID = polar_grid(128, 80, r_max=0.99)


@dataclass(frozen=True, slots=True)
class Extremal:
    """Extremal function of a class with the factors its quotient splits into."""

    params: ClassParams
    side: Side
    f: RationalFunction
    g: Optional[RationalFunction]
    p: RationalFunction
    h: Optional[RationalFunction]
    blocks: Tuple[SchwarzBlock, ...]

    def factors(self) -> Tuple[RationalFunction, Optional[RationalFunction]]:
        """``p = (1+z) g / z`` and ``h = f / g`` (F1), or ``p = (1+z) f / z`` (F3)."""

        return self.p, self.h

    def second_coefficients(self) -> Tuple[float, Optional[float]]:
        a2 = float(self.f.series(2)[2])
        g2 = None if self.g is None else float(self.g.series(2)[2])
        return a2, g2


def _quadratic(middle: float, *, sign: float = 1.0) -> list[float]:
    """Ascending coefficients of ``1 + sign*middle*z + z**2``."""

    return [1.0, sign * middle, 1.0]


def _validate(extremal: Extremal) -> None:
    for name, func in (("f", extremal.f), ("g", extremal.g), ("p", extremal.p), ("h", extremal.h)):
        if func is None:
            continue
        if func.min_denominator(_DENOMINATOR_GRID) <= _DENOMINATOR_EPS:
            raise ExtremalConstructionError(f"denominator of {name} vanishes inside the unit disk")
    for name, func in (("p", extremal.p), ("h", extremal.h)):
        if func is None:
            continue
        values = func(_MEMBERSHIP_GRID)
        if not np.all(np.isfinite(values)) or np.any(values.real <= 0.0):
            raise ExtremalConstructionError(f"factor {name} leaves the right half-plane")
    for block in extremal.blocks:
        if block.max_modulus(_MEMBERSHIP_GRID) >= 1.0:
            raise ExtremalConstructionError(f"Schwarz block with a={block.a:g} leaves the unit disk")


def build_extremal(params: ClassParams, side: Side = Side.LEFT) -> Extremal:
    """Construct the extremal function for ``params``.

    The first family has one extremal per side; the third family uses the same
    function for both sides. No extremal is known for the second family.
    """

    if params.family is Family.F2:
        raise UnsupportedExtremalError(params.family)

    if params.family is Family.F3:
        big_b = 1.0 + 3.0 * params.b
        f = RationalFunction.from_factors([[0.0, 1.0], _quadratic(big_b)], [[1.0, 1.0], [1.0, 0.0, -1.0]])
        p = RationalFunction(Polynomial(_quadratic(big_b)), Polynomial([1.0, 0.0, -1.0]))
        extremal = Extremal(params, side, f, None, p, None, (SchwarzBlock(big_b / 2.0),))
    else:
        d_coef = 5.0 * params.b - 3.0 * params.c
        c_coef = 3.0 * params.c + 1.0
        blocks = (SchwarzBlock(d_coef / 2.0), SchwarzBlock(c_coef / 2.0))
        if side is Side.LEFT:
            f = RationalFunction.from_factors(
                [[0.0, 1.0], [1.0, -1.0], [1.0, -1.0], [1.0, 1.0]],
                [_quadratic(d_coef, sign=-1.0), _quadratic(c_coef, sign=-1.0)],
            )
            g = RationalFunction.from_factors([[0.0, 1.0], [1.0, -1.0]], [_quadratic(c_coef, sign=-1.0)])
            p = RationalFunction(Polynomial([1.0, 0.0, -1.0]), Polynomial(_quadratic(c_coef, sign=-1.0)))
            h = RationalFunction(Polynomial([1.0, 0.0, -1.0]), Polynomial(_quadratic(d_coef, sign=-1.0)))
        else:
            f = RationalFunction.from_factors(
                [[0.0, 1.0], _quadratic(d_coef), _quadratic(c_coef)],
                [[1.0, 0.0, -1.0], [1.0, 0.0, -1.0], [1.0, 1.0]],
            )
            g = RationalFunction.from_factors([[0.0, 1.0], _quadratic(c_coef)], [[1.0, 0.0, -1.0], [1.0, 1.0]])
            p = RationalFunction(Polynomial(_quadratic(c_coef)), Polynomial([1.0, 0.0, -1.0]))
            h = RationalFunction(Polynomial(_quadratic(d_coef)), Polynomial([1.0, 0.0, -1.0]))
        extremal = Extremal(params, side, f, g, p, h, blocks)

    _validate(extremal)
    logger.debug("built %s extremal for %s", side.value, params.describe())
    return extremal


# -- brute-force radius ------------------------------------------------------------

def _winding_inside(
    region: RegionSpec,
    w: ComplexArray,
    n_boundary: int,
    edge_eps: float,
    refine_factor: int,
    max_refinements: int,
) -> bool:
    r_in, r_out = polyline_radii(region, n_boundary)
    dist = np.abs(w - 1.0)
    if np.any(dist > r_out):
        return False
    candidates = w[dist >= r_in]
    if candidates.size == 0:
        return True
    candidates = candidates[np.argsort(-np.abs(candidates - 1.0), kind="stable")]
    pending: list[ComplexArray] = []
    for begin in range(0, candidates.size, 512):
        block = candidates[begin : begin + 512]
        codes = classify(region, block, n_boundary, edge_eps)
        if np.any(codes == OUTSIDE):
            return False
        if np.any(codes == INDETERMINATE):
            pending.append(block[codes == INDETERMINATE])
    if not pending:
        return True

    unresolved = np.concatenate(pending)
    samples = n_boundary
    for _ in range(max_refinements):
        samples *= refine_factor
        trace(logger, "refining %d indeterminate points at %d boundary samples", unresolved.size, samples)
        codes = classify(region, unresolved, samples, edge_eps)
        if np.any(codes == OUTSIDE):
            return False
        unresolved = unresolved[codes == INDETERMINATE]
        if unresolved.size == 0:
            return True
    raise OracleError(
        f"{unresolved.size} image points stay within {edge_eps:g} of the {region.name} boundary "
        f"after {max_refinements} refinements"
    )


def _all_inside(
    f: RationalFunction,
    region: RegionSpec,
    z: ComplexArray,
    n_boundary: int,
    edge_eps: float,
    refine_factor: int,
    max_refinements: int,
) -> bool:
    w = f.log_deriv(z)
    if not np.all(np.isfinite(w)):
        return False
    if region.closed_form:
        return bool(np.all(contains_many(region, w)))
    return _winding_inside(region, w, n_boundary, edge_eps, refine_factor, max_refinements)


def brute_radius(
    f: RationalFunction,
    region: RegionSpec,
    r_tol: float = 1e-3,
    n_theta: int = 1440,
    n_rad: int = 48,
    *,
    n_boundary: int = 8192,
    edge_eps: float = 1e-9,
    refine_factor: int = 4,
    max_refinements: int = 2,
) -> float:
    """Measure the largest disk whose image under ``z f'/f`` stays in ``region``.

    Samples the whole disk of radius ``r`` (``n_rad`` circles of ``n_theta``
    points) and bisects ``r`` on ``(0, 1 - 1e-6)`` to width ``r_tol``.
    """

    if n_theta < 720:
        raise DomainError(f"n_theta must be at least 720, got {n_theta}")
    if n_rad < 32:
        raise DomainError(f"n_rad must be at least 32, got {n_rad}")
    if not 0.0 < r_tol <= 1e-3:
        raise DomainError(f"r_tol must lie in (0, 1e-3], got {r_tol}")

    unit = polar_grid(n_theta, n_rad, r_max=1.0)

    def passes(r: float) -> bool:
        return _all_inside(f, region, r * unit, n_boundary, edge_eps, refine_factor, max_refinements)

    lo, hi = 0.0, 1.0 - 1e-6
    if passes(hi):
        return hi
    while hi - lo > r_tol:
        mid = 0.5 * (lo + hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
    result = 0.5 * (lo + hi)
    logger.debug("brute radius for %s: %.6f", region.label(), result)
    return result


# -- sharpness ---------------------------------------------------------------------

ContactFunctional = Callable[[complex], float]


@dataclass(frozen=True, slots=True)
class _Contact:
    functional: ContactFunctional
    target: float
    side: Side
    label: str


def _log_abs(w: complex) -> float:
    return abs(cmath.log(w)) if w != 0 else math.inf


def _sigmoid_functional(w: complex) -> float:
    if w == 2:
        return math.inf
    return _log_abs(w / (2.0 - w))


_CONTACTS: Dict[RegionKind, Callable[[RegionSpec], _Contact]] = {
    RegionKind.HALFPLANE: lambda spec: _Contact(lambda w: w.real, spec.alpha, Side.LEFT, "Re w"),
    RegionKind.LEMNISCATE: lambda spec: _Contact(lambda w: abs(w * w - 1.0), 1.0, Side.RIGHT, "|w^2 - 1|"),
    RegionKind.PARABOLA: lambda spec: _Contact(lambda w: w.real - abs(w - 1.0), 0.0, Side.LEFT, "Re w - |w - 1|"),
    RegionKind.EXPONENTIAL: lambda spec: _Contact(_log_abs, 1.0, Side.LEFT, "|log w|"),
    RegionKind.CARDIOID: lambda spec: _Contact(abs, 1.0 / 3.0, Side.LEFT, "|w|"),
    RegionKind.SINE: lambda spec: _Contact(abs, 1.0 + math.sin(1.0), Side.RIGHT, "|w|"),
    RegionKind.LUNE: lambda spec: _Contact(lambda w: abs(w * w - 1.0) - 2.0 * abs(w), 0.0, Side.LEFT, "|w^2 - 1| - 2|w|"),
    RegionKind.RATIONAL_R: lambda spec: _Contact(abs, 2.0 * SQRT2 - 2.0, Side.LEFT, "|w|"),
    RegionKind.NEPHROID: lambda spec: _Contact(abs, 5.0 / 3.0, Side.RIGHT, "|w|"),
    RegionKind.SIGMOID: lambda spec: _Contact(_sigmoid_functional, 1.0, Side.RIGHT, "|log(w/(2 - w))|"),
}

_CLAIMS: Dict[Family, frozenset[RegionKind]] = {
    Family.F1: frozenset(_CONTACTS),
    Family.F2: frozenset(),
    Family.F3: frozenset({RegionKind.LEMNISCATE}),
}



def contact_side(region: RegionSpec) -> Side:
    """Side at which the extremal touches the boundary of ``region``."""

    factory = _CONTACTS.get(region.kind)
    return Side.LEFT if factory is None else factory(region).side


def sharpness_claimed(family: Family, region: RegionSpec) -> bool:
    return region.kind in _CLAIMS[Family(family)]


def envelope_attained(params: ClassParams, side: Side) -> bool:
    """Whether the extremal reaches the extreme point of the envelope disk on ``side``.

    The first family needs 5b - 3c <= 0 and 3c + 1 <= 0. The third family needs
    1 + 3b <= 0 on the right and 1 + 3b = -2 on the left.
    """

    slack = 1e-12
    if params.family is Family.F1:
        return 5.0 * params.b - 3.0 * params.c <= slack and 3.0 * params.c + 1.0 <= slack
    if params.family is Family.F3:
        big_b = 1.0 + 3.0 * params.b
        if side is Side.RIGHT:
            return big_b <= slack
        return abs(big_b + 2.0) <= slack
    return False


@dataclass(frozen=True, slots=True)
class SharpnessReport:
    family: Family
    region: RegionSpec
    side: Optional[Side]
    z: Optional[float]
    value: float
    target: float
    gap: float
    claimed: bool
    expected_contact: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        """True unless a contact is expected and missed by more than 1e-6."""

        return not self.expected_contact or self.gap <= 1e-6


def verify_sharpness(params: ClassParams, region: RegionSpec, r_star: float) -> SharpnessReport:
    """Evaluate the boundary-contact functional of the extremal at ``+-r_star``."""

    check_supported(params, region)
    claimed = sharpness_claimed(params.family, region)
    factory = _CONTACTS.get(region.kind)
    nan = float("nan")
    if params.family is Family.F2:
        return SharpnessReport(params.family, region, None, None, nan, nan, nan, False, False, "no extremal printed")
    if factory is None:
        return SharpnessReport(params.family, region, None, None, nan, nan, nan, False, False, "no sharpness claim")

    contact = factory(region)
    extremal = build_extremal(params, contact.side)
    z = contact.side.sign * float(r_star)
    w = log_deriv(extremal.f, z)
    value = float(contact.functional(w))
    gap = abs(value - contact.target)
    expected = claimed and envelope_attained(params, contact.side)
    if not claimed:
        note = "sharpness not claimed; gap reported only"
    elif not expected:
        note = "extremal does not reach the envelope for these coefficients"
    else:
        note = f"{contact.label} at z={z:+.12g}"
    logger.debug("sharpness %s %s: value=%.12g target=%.12g gap=%.3g", params.describe(), region.label(), value, contact.target, gap)
    return SharpnessReport(params.family, region, contact.side, z, value, contact.target, gap, claimed, expected, note)


# -- coefficient lemma ------------------------------------------------------------------

def lemma1_bound(b_lemma: float, alpha: float, r: ArrayLike) -> NDArray[np.float64]:
    """Upper bound for ``|z p'/p|`` on ``|z| = r`` over the class with fixed first coefficient."""

    radii = np.asarray(r, dtype=float)
    b = abs(b_lemma)
    return (
        2.0 * (1.0 - alpha) * radii / (1.0 - radii**2)
        * (b * radii**2 + 2.0 * radii + b)
        / ((1.0 - 2.0 * alpha) * radii**2 + 2.0 * (1.0 - alpha) * b * radii + 1.0)
    )


def lemma1_check(b_lemma: float, alpha: float, n_samples: int = 10_000, seed: int = 0) -> float:
    """Largest relative excess of ``|z p'/p|`` over :func:`lemma1_bound` on sampled points.

    The excess is measured as ``(|z p'/p| - bound) / bound`` where the bound is
    positive; near the unit circle both sides grow like ``1 / (1 - r)``.

    ``p = (1 + (1 - 2 alpha) w) / (1 - w)`` with ``w`` the Schwarz block of
    parameter ``b_lemma``, so ``p = 1 + 2 b (1 - alpha) z + ...``.
    """

    if abs(b_lemma) > 1.0 or not 0.0 <= alpha < 1.0:
        raise DomainError(f"need |b| <= 1 and 0 <= alpha < 1, got b={b_lemma!r}, alpha={alpha!r}")
    block = SchwarzBlock(b_lemma)
    p = RationalFunction(
        Polynomial([1.0, 2.0 * b_lemma * (1.0 - alpha), 1.0 - 2.0 * alpha]),
        Polynomial([1.0, 0.0, -1.0]),
    )
    rng = np.random.default_rng(seed)
    n_axis = max(2, n_samples // 10)
    n_random = max(0, n_samples - 2 * n_axis)
    axis = np.linspace(0.0, 0.999, n_axis)
    radii = np.concatenate([0.999 * np.sqrt(rng.random(n_random)), axis, axis])
    angles = np.concatenate([2.0 * math.pi * rng.random(n_random), np.zeros(n_axis), np.full(n_axis, math.pi)])
    z = radii * np.exp(1j * angles)

    composed = (1.0 + (1.0 - 2.0 * alpha) * block(z)) / (1.0 - block(z))
    if not np.allclose(composed, p(z), rtol=1e-9, atol=1e-9):
        raise OracleError("Schwarz composition disagrees with the expanded Caratheodory function")

    bound = lemma1_bound(b_lemma, alpha, radii)
    excess = np.abs(p.log_deriv(z)) - bound
    relative = np.where(bound > 0.0, excess / np.where(bound > 0.0, bound, 1.0), excess)
    return float(max(relative.max(), 0.0))
