"""starlike_radius public API."""

from .api import configure, get_context_logger, get_logger, settings
from .envelope import ClassParams, Family, RadiusResult, derive_params, growth, margin, radius_by_crossing
from .oracle import brute_radius, build_extremal, log_deriv, verify_sharpness
from .regions import RegionKind, RegionSpec, boundary, contains, disk_bound
from .rootfind import smallest_root
from .statements import radius_by_statement, statement_equation
from .version import __version__

__all__ = [
    "configure",
    "settings",
    "get_logger",
    "get_context_logger",
    "Family",
    "ClassParams",
    "RadiusResult",
    "derive_params",
    "growth",
    "margin",
    "radius_by_crossing",
    "radius_by_statement",
    "statement_equation",
    "RegionKind",
    "RegionSpec",
    "boundary",
    "contains",
    "disk_bound",
    "smallest_root",
    "build_extremal",
    "log_deriv",
    "brute_radius",
    "verify_sharpness",
    "__version__",
]
