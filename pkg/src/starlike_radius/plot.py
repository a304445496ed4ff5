"""Deterministic SVG of the extremal image curve against the region boundary."""

from __future__ import annotations

import logging
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure

from .core.errors import DomainError
from .envelope import ClassParams
from .oracle import build_extremal, contact_side
from .regions import RegionSpec, boundary_points
from .utils.paths import resolve_output

__all__ = ["SVG_RC", "render_contact_plot"]

logger = logging.getLogger(__name__)

SVG_RC = {
    "svg.hashsalt": "starlike-radius",
    "svg.fonttype": "path",
    "path.simplify": False,
}


def render_contact_plot(
    params: ClassParams,
    region: RegionSpec,
    r_star: float,
    path: str | Path,
    *,
    n_curve: int = 1024,
    n_boundary: int = 2048,
) -> Path:
    """Draw ``z f'/f`` on ``|z| = r_star`` for the extremal, the region boundary and the contact point."""

    target = resolve_output(path)
    if target is None:
        raise DomainError("a plot needs an output file")
    side = contact_side(region)
    extremal = build_extremal(params, side)

    thetas = np.linspace(0.0, 2.0 * math.pi, n_curve, endpoint=False)
    image = extremal.f.log_deriv(r_star * np.exp(1j * thetas))
    image = np.append(image, image[:1])
    edge = boundary_points(region, np.linspace(0.0, 2.0 * math.pi, n_boundary, endpoint=False))
    edge = np.append(edge, edge[:1])
    contact = complex(extremal.f.log_deriv(np.array([side.sign * r_star]))[0])

    # frame the image curve; unbounded boundaries are clipped to it
    lo_x, hi_x = float(image.real.min()), float(image.real.max())
    lo_y, hi_y = float(image.imag.min()), float(image.imag.max())
    pad = 0.25 * max(hi_x - lo_x, hi_y - lo_y, 0.1)

    with rc_context(SVG_RC):
        fig = Figure(figsize=(5.0, 5.0))
        ax = fig.add_subplot(1, 1, 1)
        ax.plot(edge.real, edge.imag, color="tab:blue", linewidth=1.0, label=f"boundary of {region.label()}")
        ax.plot(image.real, image.imag, color="tab:red", linewidth=1.0, label=f"extremal image, r={r_star:.6f}")
        ax.plot([contact.real], [contact.imag], marker="o", color="black", linestyle="none", label="contact")
        ax.plot([1.0], [0.0], marker="+", color="gray", linestyle="none")
        ax.set_xlim(lo_x - pad, hi_x + pad)
        ax.set_ylim(lo_y - pad, hi_y + pad)
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_xlabel("Re w")
        ax.set_ylabel("Im w")
        ax.set_title(f"{params.describe()}, {side.value} extremal")
        ax.legend(loc="upper right", fontsize="small")
        fig.savefig(target, format="svg", metadata={"Date": None})
    logger.info("wrote %s", target)
    return target
