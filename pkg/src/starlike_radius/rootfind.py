"""Scalar root isolation on a bounded interval."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from scipy import optimize

from .core.errors import DomainError, EvaluationError, NoRootError
from .core.levels import trace

__all__ = [
    "Polynomial",
    "RootBracket",
    "ZERO_ACCEPT",
    "make_polynomial",
    "evaluate",
    "smallest_root",
]

logger = logging.getLogger(__name__)

ZERO_ACCEPT = 1e-14

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True, slots=True)
class RootBracket:
    """Root with the isolating bracket it was refined inside."""

    root: float
    lo: float
    hi: float
    residual: float
    scan_max: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


def make_polynomial(coeffs: Sequence[float]) -> Polynomial:
    """Build a polynomial from ascending coefficients, trimming trailing zeros."""

    values = np.asarray(list(coeffs), dtype=float)
    if values.size == 0:
        values = np.zeros(1)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"polynomial coefficients must be finite, got {values.tolist()}")
    return Polynomial(values).trim()


def evaluate(p: Polynomial, r: float) -> float:
    """Horner evaluation of ``p`` at ``r``."""

    return float(P.polyval(r, p.coef))


def _scan_values(f: ScalarFunction, xs: np.ndarray, vectorized: bool) -> Iterator[float]:
    if vectorized:
        values = np.asarray(f(xs), dtype=float)  # type: ignore[arg-type]
        if values.shape != xs.shape:
            raise DomainError(f"vectorized function returned shape {values.shape}, expected {xs.shape}")
        yield from values.tolist()
        return
    for x in xs.tolist():
        yield float(f(x))


def _value(f: ScalarFunction, x: float) -> float:
    value = float(f(x))
    if not math.isfinite(value):
        raise EvaluationError(x)
    return value


def _bisect(f: ScalarFunction, a: float, b: float, fa: float, tol: float) -> tuple[float, float, float | None]:
    """Halve [a, b] until narrower than ``tol``; return an exact zero if one is hit."""

    steps = 0
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = _value(f, m)
        steps += 1
        if fm == 0.0:
            return a, b, m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b = m
    trace(logger, "bisection finished after %d steps on [%r, %r]", steps, a, b)
    return a, b, None


def _secant(f: ScalarFunction, a: float, b: float, maxiter: int) -> float | None:
    if maxiter <= 0:
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            x = optimize.newton(f, x0=a, x1=b, maxiter=maxiter, tol=1e-16, disp=False)
        except (RuntimeError, ArithmeticError, ValueError):
            return None
    x = float(x)
    return x if math.isfinite(x) else None


def smallest_root(
    f: ScalarFunction,
    lo: float,
    hi: float,
    scan_n: int = 4096,
    tol: float = 1e-12,
    *,
    secant_maxiter: int = 50,
    vectorized: bool = False,
) -> RootBracket:
    """Return the first root of ``f`` on the open interval ``(lo, hi)``.

    ``scan_n + 1`` equispaced abscissae are visited in order; the first sign
    change (or interior value within ``ZERO_ACCEPT`` of zero) wins. The bracket
    is bisected to width ``tol`` and polished with a secant step that must stay
    strictly inside it. With ``vectorized`` the scan evaluates ``f`` on the
    whole grid at once; non-finite values past the first bracket are ignored.
    """

    if scan_n < 64:
        raise DomainError(f"scan_n must be at least 64, got {scan_n}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not lo < hi:
        raise DomainError(f"empty interval [{lo!r}, {hi!r}]")

    xs = np.linspace(lo, hi, scan_n + 1)
    scan_max = 0.0
    prev_x = prev_v = None
    for index, value in enumerate(_scan_values(f, xs, vectorized)):
        x = float(xs[index])
        if not math.isfinite(value):
            raise EvaluationError(x)
        scan_max = max(scan_max, abs(value))
        interior = 0 < index < scan_n
        if interior and abs(value) <= ZERO_ACCEPT:
            trace(logger, "scan point %r accepted as root (|f| = %.3g)", x, abs(value))
            return RootBracket(root=x, lo=x - tol / 2, hi=x + tol / 2, residual=abs(value), scan_max=scan_max)
        if prev_v is not None and prev_x is not None and prev_v * value < 0.0:
            trace(logger, "sign change isolated in [%r, %r]", prev_x, x)
            return _refine(f, prev_x, x, prev_v, tol, secant_maxiter, scan_max)
        prev_x, prev_v = x, value

    raise NoRootError(lo, hi)


def _refine(
    f: ScalarFunction,
    a: float,
    b: float,
    fa: float,
    tol: float,
    secant_maxiter: int,
    scan_max: float,
) -> RootBracket:
    a, b, exact = _bisect(f, a, b, fa, tol)
    if exact is not None:
        return RootBracket(root=exact, lo=exact - tol / 2, hi=exact + tol / 2, residual=0.0, scan_max=scan_max)

    mid = 0.5 * (a + b)
    best, best_res = mid, abs(_value(f, mid))
    candidate = _secant(f, a, b, secant_maxiter)
    if candidate is not None and a < candidate < b:
        res = abs(float(f(candidate)))
        if math.isfinite(res) and res < best_res:
            best, best_res = candidate, res
    return RootBracket(root=best, lo=a, hi=b, residual=best_res, scan_max=scan_max)
