"""Target regions: membership, boundary parametrization and containment thresholds."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core.errors import BoundaryIndeterminateError, DomainError, InfeasibleCenterError

__all__ = [
    "RegionKind",
    "RegionSpec",
    "ALL_KINDS",
    "SQRT2",
    "K_RATIONAL",
    "SIGMOID_TIP",
    "generating_map",
    "boundary",
    "boundary_points",
    "contains",
    "contains_many",
    "classify",
    "winding_contains",
    "polyline_radii",
    "disk_bound",
    "threshold",
    "INSIDE",
    "OUTSIDE",
    "INDETERMINATE",
]

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
K_RATIONAL = SQRT2 + 1.0
SIGMOID_TIP = 2.0 * math.e / (1.0 + math.e)
_RL_SLOPE = 2.0 * (SQRT2 - 1.0)

INSIDE = 1
OUTSIDE = 0
INDETERMINATE = -1

_TWO_PI = 2.0 * math.pi
_FAR_RADIUS = 1.0 - 1e-6
_CHUNK_ELEMENTS = 1 << 21

ComplexArray = NDArray[np.complex128]


class RegionKind(str, Enum):
    """The twelve target regions; values are the command-line names."""

    HALFPLANE = "halfplane"
    LEMNISCATE = "lemniscate"
    PARABOLA = "parabola"
    EXPONENTIAL = "exponential"
    CARDIOID = "cardioid"
    SINE = "sine"
    LUNE = "lune"
    RATIONAL_R = "rational-r"
    RATIONAL_RL = "rational-rl"
    SECTOR = "sector"
    NEPHROID = "nephroid"
    SIGMOID = "sigmoid"

    def __str__(self) -> str:
        return self.value


ALL_KINDS: Tuple[RegionKind, ...] = tuple(RegionKind)

_UNBOUNDED = frozenset({RegionKind.HALFPLANE, RegionKind.PARABOLA, RegionKind.SECTOR})
_CLOSED_FORM = frozenset(
    {
        RegionKind.HALFPLANE,
        RegionKind.LEMNISCATE,
        RegionKind.PARABOLA,
        RegionKind.EXPONENTIAL,
        RegionKind.LUNE,
        RegionKind.SECTOR,
        RegionKind.SIGMOID,
    }
)

# Largest center for which the containment threshold is the one the radius
# results rely on; past it the underlying lemmas switch branch.
_CENTER_CAPS: Dict[RegionKind, float] = {
    RegionKind.HALFPLANE: math.inf,
    RegionKind.LEMNISCATE: SQRT2,
    RegionKind.PARABOLA: 1.5,
    RegionKind.EXPONENTIAL: (math.e + 1.0 / math.e) / 2.0,
    RegionKind.CARDIOID: 5.0 / 3.0,
    RegionKind.SINE: 1.0 + math.sin(1.0),
    RegionKind.LUNE: SQRT2,
    RegionKind.RATIONAL_R: SQRT2,
    RegionKind.RATIONAL_RL: SQRT2,
    RegionKind.SECTOR: math.inf,
    RegionKind.NEPHROID: 5.0 / 3.0,
    RegionKind.SIGMOID: SIGMOID_TIP,
}


@dataclass(frozen=True, slots=True)
class RegionSpec:
    """A target region with its parameters.

    ``alpha`` is only meaningful for the half-plane and ``gamma`` only for the
    sector; other kinds normalize both to their defaults so equal regions
    compare and hash equal.
    """

    kind: RegionKind
    alpha: float = 0.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        try:
            kind = RegionKind(self.kind)
        except ValueError as exc:
            raise DomainError(f"unknown region {self.kind!r}") from exc
        object.__setattr__(self, "kind", kind)
        alpha = float(self.alpha) if kind is RegionKind.HALFPLANE else 0.0
        gamma = float(self.gamma) if kind is RegionKind.SECTOR else 1.0
        if not 0.0 <= alpha < 1.0:
            raise DomainError(f"half-plane order alpha must satisfy 0 <= alpha < 1, got {alpha}")
        if not 0.0 < gamma <= 1.0:
            raise DomainError(f"sector order gamma must satisfy 0 < gamma <= 1, got {gamma}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def parse(cls, name: str, *, alpha: float | None = None, gamma: float | None = None) -> "RegionSpec":
        return cls(
            name.strip().lower(),  # type: ignore[arg-type]
            alpha=0.0 if alpha is None else alpha,
            gamma=1.0 if gamma is None else gamma,
        )

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def closed_form(self) -> bool:
        return self.kind in _CLOSED_FORM

    @property
    def bounded(self) -> bool:
        return self.kind not in _UNBOUNDED

    @property
    def center_cap(self) -> float:
        return _CENTER_CAPS[self.kind]

    def label(self) -> str:
        if self.kind is RegionKind.HALFPLANE:
            return f"{self.name}(alpha={self.alpha:g})"
        if self.kind is RegionKind.SECTOR:
            return f"{self.name}(gamma={self.gamma:g})"
        return self.name


# -- generating maps -----------------------------------------------------------

def _halfplane(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return (1.0 + (1.0 - 2.0 * spec.alpha) * z) / (1.0 - z)


def _lemniscate(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return np.sqrt(1.0 + z)


def _parabola(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    s = np.sqrt(z)
    return 1.0 + (2.0 / math.pi**2) * np.log((1.0 - s) / (1.0 + s)) ** 2


def _exponential(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return np.exp(z)


def _cardioid(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return 1.0 + 4.0 * z / 3.0 + 2.0 * z**2 / 3.0


def _sine(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return 1.0 + np.sin(z)


def _lune(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return z + np.sqrt(1.0 + z**2)


def _rational_r(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    k = K_RATIONAL
    return 1.0 + z * (k + z) / (k * (k - z))


def _rational_rl(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return SQRT2 - (SQRT2 - 1.0) * np.sqrt((1.0 - z) / (1.0 + _RL_SLOPE * z))


def _sector(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return np.power((1.0 + z) / (1.0 - z), spec.gamma)


def _nephroid(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return 1.0 + z - z**3 / 3.0


def _sigmoid(z: ComplexArray, spec: RegionSpec) -> ComplexArray:
    return 2.0 / (1.0 + np.exp(-z))


_GENERATORS: Dict[RegionKind, Callable[[ComplexArray, RegionSpec], ComplexArray]] = {
    RegionKind.HALFPLANE: _halfplane,
    RegionKind.LEMNISCATE: _lemniscate,
    RegionKind.PARABOLA: _parabola,
    RegionKind.EXPONENTIAL: _exponential,
    RegionKind.CARDIOID: _cardioid,
    RegionKind.SINE: _sine,
    RegionKind.LUNE: _lune,
    RegionKind.RATIONAL_R: _rational_r,
    RegionKind.RATIONAL_RL: _rational_rl,
    RegionKind.SECTOR: _sector,
    RegionKind.NEPHROID: _nephroid,
    RegionKind.SIGMOID: _sigmoid,
}


def generating_map(region: RegionSpec, z: ArrayLike) -> ComplexArray:
    """Evaluate the region's generating function on points of the unit disk."""

    values = np.asarray(z, dtype=np.complex128)
    with np.errstate(divide="ignore", invalid="ignore"):
        return _GENERATORS[region.kind](values, region)


# -- boundary ------------------------------------------------------------------

def boundary_points(region: RegionSpec, thetas: ArrayLike, *, clamp: float = 1e-4) -> ComplexArray:
    """Vectorized :func:`boundary`.

    Unbounded regions have their boundary point at infinity at angle 0; the
    angle is clamped into ``[clamp, 2*pi - clamp]`` for those. The half-plane
    boundary is the line ``alpha + i*(1 - alpha)*cot(theta/2)``.
    """

    angles = np.asarray(thetas, dtype=float)
    if region.kind in _UNBOUNDED:
        angles = np.clip(angles, clamp, _TWO_PI - clamp)
    if region.kind is RegionKind.HALFPLANE:
        return (region.alpha + 1j * (1.0 - region.alpha) / np.tan(angles / 2.0)).astype(np.complex128)
    return generating_map(region, np.exp(1j * angles))


def boundary(region: RegionSpec, theta: float, *, clamp: float = 1e-4) -> complex:
    """Return the boundary point of ``region`` at parameter ``theta`` in [0, 2*pi)."""

    if not (math.isfinite(theta) and 0.0 <= theta < _TWO_PI):
        raise DomainError(f"theta must lie in [0, 2*pi), got {theta!r}")
    return complex(boundary_points(region, np.array([theta]), clamp=clamp)[0])


# -- closed-form membership ---------------------------------------------------

def _predicate(region: RegionSpec, w: ComplexArray) -> NDArray[np.bool_]:
    kind = region.kind
    re = w.real
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind is RegionKind.HALFPLANE:
            return re > region.alpha
        if kind is RegionKind.LEMNISCATE:
            return (re > 0.0) & (np.abs(w * w - 1.0) < 1.0)
        if kind is RegionKind.PARABOLA:
            return np.abs(w - 1.0) < re
        if kind is RegionKind.LUNE:
            return (re > 0.0) & (np.abs(w * w - 1.0) < 2.0 * np.abs(w))
        if kind is RegionKind.EXPONENTIAL:
            positive = re > 0.0
            safe = np.where(positive, w, 1.0)
            return positive & (np.abs(np.log(safe)) < 1.0)
        if kind is RegionKind.SIGMOID:
            ok = (re > 0.0) & (w != 2.0)
            q = np.where(ok, w / np.where(ok, 2.0 - w, 1.0), 1.0)
            ok &= q.real > 0.0
            return ok & (np.abs(np.log(np.where(ok, q, 1.0))) < 1.0)
        if kind is RegionKind.SECTOR:
            nonzero = w != 0.0
            return nonzero & (np.abs(np.angle(w)) < region.gamma * math.pi / 2.0)
    raise DomainError(f"no closed-form membership test for {kind.value}")


# -- winding-number membership -------------------------------------------------

@dataclass(frozen=True, slots=True)
class _Polyline:
    vertices: ComplexArray
    r_in: float
    r_out: float


def _segment_distance(points: ComplexArray, starts: ComplexArray, ends: ComplexArray) -> NDArray[np.float64]:
    edge = ends - starts
    length2 = np.maximum(np.abs(edge) ** 2, np.finfo(float).tiny)
    rel = points[:, None] - starts[None, :]
    t = np.clip((rel * np.conj(edge)[None, :]).real / length2[None, :], 0.0, 1.0)
    return np.abs(rel - t * edge[None, :]).min(axis=1)


@lru_cache(maxsize=64)
def _polyline(region: RegionSpec, n_samples: int, clamp: float) -> _Polyline:
    thetas = _TWO_PI * np.arange(n_samples) / n_samples
    pts = boundary_points(region, thetas, clamp=clamp)
    if region.kind in _UNBOUNDED:
        far = generating_map(region, np.array([_FAR_RADIUS]))
        pts = np.concatenate([pts, far])
    keep = np.ones(pts.size, dtype=bool)
    keep[1:] = pts[1:] != pts[:-1]
    pts = pts[keep]
    closed = np.concatenate([pts, pts[:1]])
    r_in = float(_segment_distance(np.array([1.0 + 0j]), closed[:-1], closed[1:])[0])
    r_out = float(np.abs(pts - 1.0).max())
    logger.debug("polyline for %s: %d vertices, r_in=%.6g r_out=%.6g", region.label(), pts.size, r_in, r_out)
    return _Polyline(vertices=closed, r_in=r_in, r_out=r_out)


def polyline_radii(region: RegionSpec, n_samples: int = 8192, *, clamp: float = 1e-4) -> Tuple[float, float]:
    """Return (inner, outer) distances from 1 to the boundary polyline."""

    line = _polyline(region, int(n_samples), float(clamp))
    return line.r_in, line.r_out


def _winding_codes(
    region: RegionSpec,
    points: ComplexArray,
    n_samples: int,
    edge_eps: float,
    clamp: float,
) -> Tuple[NDArray[np.int8], NDArray[np.float64]]:
    line = _polyline(region, int(n_samples), float(clamp))
    starts, ends = line.vertices[:-1], line.vertices[1:]
    codes = np.empty(points.size, dtype=np.int8)
    distances = np.empty(points.size, dtype=float)
    chunk = max(1, _CHUNK_ELEMENTS // line.vertices.size)
    for begin in range(0, points.size, chunk):
        block = points[begin : begin + chunk]
        dist = _segment_distance(block, starts, ends)
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = line.vertices[None, :] - block[:, None]
            turns = np.angle(rel[:, 1:] / rel[:, :-1]).sum(axis=1) / _TWO_PI
        inside = np.abs(np.rint(turns)) == 1
        block_codes = np.where(inside, INSIDE, OUTSIDE).astype(np.int8)
        block_codes[dist < edge_eps] = INDETERMINATE
        codes[begin : begin + block.size] = block_codes
        distances[begin : begin + block.size] = dist
    return codes, distances


def classify(
    region: RegionSpec,
    points: ArrayLike,
    n_samples: int = 8192,
    edge_eps: float = 1e-9,
    *,
    clamp: float = 1e-4,
) -> NDArray[np.int8]:
    """Winding-number classification of ``points``: 1 inside, 0 outside, -1 indeterminate.

    Unbounded regions are closed through a far point on the real axis, so the
    answer is exact only inside the window spanned by the clamped boundary.
    """

    if n_samples < 256:
        raise DomainError(f"n_samples must be at least 256, got {n_samples}")
    values = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
    codes, _ = _winding_codes(region, values, n_samples, edge_eps, clamp)
    return codes


def winding_contains(
    region: RegionSpec,
    w: complex,
    n_samples: int = 8192,
    *,
    edge_eps: float = 1e-9,
    clamp: float = 1e-4,
) -> bool:
    """Winding-number membership of a single point."""

    if n_samples < 256:
        raise DomainError(f"n_samples must be at least 256, got {n_samples}")
    point = complex(w)
    if not (math.isfinite(point.real) and math.isfinite(point.imag)):
        raise DomainError(f"point must be finite, got {w!r}")
    codes, distances = _winding_codes(region, np.array([point]), n_samples, edge_eps, clamp)
    if codes[0] == INDETERMINATE:
        raise BoundaryIndeterminateError(point, float(distances[0]))
    return bool(codes[0] == INSIDE)


def contains_many(
    region: RegionSpec,
    points: ArrayLike,
    *,
    n_samples: int = 8192,
    edge_eps: float = 1e-9,
) -> NDArray[np.bool_]:
    """Membership of many points; non-finite points are outside.

    Regions without a closed form go through :func:`classify` and raise
    :class:`BoundaryIndeterminateError` for the first indeterminate point.
    """

    values = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
    finite = np.isfinite(values)
    result = np.zeros(values.size, dtype=bool)
    if not finite.any():
        return result
    subset = values[finite]
    if region.closed_form:
        result[finite] = _predicate(region, subset)
        return result
    codes, distances = _winding_codes(region, subset, n_samples, edge_eps, 1e-4)
    bad = np.flatnonzero(codes == INDETERMINATE)
    if bad.size:
        raise BoundaryIndeterminateError(complex(subset[bad[0]]), float(distances[bad[0]]))
    result[finite] = codes == INSIDE
    return result


def contains(region: RegionSpec, w: complex, *, n_samples: int = 8192, edge_eps: float = 1e-9) -> bool:
    """True iff ``w`` lies in the open region.

    Points on a branch obstruction of the exponential, sigmoid or sector tests
    are reported outside.
    """

    point = complex(w)
    if not (math.isfinite(point.real) and math.isfinite(point.imag)):
        raise DomainError(f"point must be finite, got {w!r}")
    if region.closed_form:
        return bool(_predicate(region, np.array([point]))[0])
    return winding_contains(region, point, n_samples, edge_eps=edge_eps)


# -- containment thresholds ------------------------------------------------------

def threshold(region: RegionSpec, a: ArrayLike) -> NDArray[np.float64]:
    """Vectorized containment threshold; ``-inf`` where no disk exists about ``a``."""

    centers = np.asarray(a, dtype=float)
    kind = region.kind
    if kind is RegionKind.HALFPLANE:
        return centers - region.alpha
    if kind is RegionKind.LEMNISCATE:
        return SQRT2 - centers
    if kind is RegionKind.PARABOLA:
        return centers - 0.5
    if kind is RegionKind.EXPONENTIAL:
        return centers - 1.0 / math.e
    if kind is RegionKind.CARDIOID:
        return centers - 1.0 / 3.0
    if kind is RegionKind.SINE:
        return 1.0 + math.sin(1.0) - centers
    if kind is RegionKind.LUNE:
        return centers - SQRT2 + 1.0
    if kind is RegionKind.RATIONAL_R:
        return centers + 2.0 - 2.0 * SQRT2
    if kind is RegionKind.RATIONAL_RL:
        x = 1.0 - (SQRT2 - centers) ** 2
        feasible = x >= 0.0
        safe = np.where(feasible, x, 0.0)
        with np.errstate(invalid="ignore"):
            value = np.sqrt(np.maximum(np.sqrt(safe) - safe, 0.0))
        return np.where(feasible, value, -np.inf)
    if kind is RegionKind.SECTOR:
        return centers * math.sin(math.pi * region.gamma / 2.0)
    if kind is RegionKind.NEPHROID:
        return 5.0 / 3.0 - centers
    if kind is RegionKind.SIGMOID:
        return SIGMOID_TIP - centers
    raise DomainError(f"unknown region {kind!r}")  # pragma: no cover


def disk_bound(region: RegionSpec, a: float) -> float:
    """Radius below which the disk about ``a`` is certified to lie in the region.

    A nonpositive value means no disk of positive radius is certified.
    """

    center = float(a)
    if not math.isfinite(center) or center < 1.0:
        raise DomainError(f"center must satisfy a >= 1, got {a!r}")
    if region.kind is RegionKind.RATIONAL_RL and (SQRT2 - center) ** 2 > 1.0:
        raise InfeasibleCenterError(f"no disk about {center!r} lies in {region.name}", center=center)
    return float(threshold(region, center))
