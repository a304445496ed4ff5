"""Exception hierarchy for starlike-radius."""

from __future__ import annotations

from typing import Any

__all__ = [
    "StarlikeError",
    "ConfigurationError",
    "DomainError",
    "ParameterError",
    "InfeasibleCenterError",
    "UnsupportedPairError",
    "UnsupportedExtremalError",
    "BoundaryIndeterminateError",
    "NoRootError",
    "EvaluationError",
    "PoleError",
    "ExtremalConstructionError",
    "OracleError",
    "VerificationError",
    "exit_code_for",
]


class StarlikeError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(StarlikeError, ValueError):
    """Raised when configuration validation fails."""


class DomainError(StarlikeError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ParameterError(DomainError):
    """Raised when derived class parameters break a theorem hypothesis."""


class InfeasibleCenterError(DomainError):
    """Raised when no containment disk exists about the requested center."""

    def __init__(self, message: str, *, center: float) -> None:
        super().__init__(message)
        self.center = center


class UnsupportedPairError(StarlikeError):
    """Raised for a (family, region) pair that no theorem covers."""

    def __init__(self, family: Any, region: Any, message: str | None = None) -> None:
        super().__init__(message or f"no radius result for family {family} and region {region}")
        self.family = family
        self.region = region


class UnsupportedExtremalError(UnsupportedPairError):
    """Raised when no extremal function is known for the family."""

    def __init__(self, family: Any) -> None:
        super().__init__(family, None, f"no extremal function printed for family {family}")


class BoundaryIndeterminateError(StarlikeError):
    """Raised when a point is too close to a region boundary to classify."""

    def __init__(self, point: complex, distance: float) -> None:
        super().__init__(f"point {point!r} lies within {distance:.3g} of the boundary polyline")
        self.point = point
        self.distance = distance


class NoRootError(StarlikeError):
    """Raised when a scan finds no sign change on the interval."""

    def __init__(self, lo: float, hi: float) -> None:
        super().__init__(f"no sign change on [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi


class EvaluationError(StarlikeError, ArithmeticError):
    """Raised when a function evaluates to a non-finite value."""

    def __init__(self, abscissa: complex | float, message: str | None = None) -> None:
        super().__init__(message or f"non-finite value at {abscissa!r}")
        self.abscissa = abscissa


class PoleError(EvaluationError):
    """Raised when a rational function is evaluated at a pole."""

    def __init__(self, abscissa: complex | float) -> None:
        super().__init__(abscissa, f"pole or zero of the rational form at {abscissa!r}")


class ExtremalConstructionError(StarlikeError):
    """Raised when an extremal function fails its admissibility checks."""


class OracleError(StarlikeError):
    """Raised when the brute-force oracle cannot classify a sample."""


class VerificationError(StarlikeError):
    """Raised when a verification invariant fails."""

    def __init__(self, check: str, detail: str) -> None:
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


def exit_code_for(exc: BaseException) -> int:
    """Map an exception onto the CLI exit-code contract."""

    if isinstance(exc, VerificationError):
        return 3
    if isinstance(exc, UnsupportedPairError):
        return 2
    return 1
