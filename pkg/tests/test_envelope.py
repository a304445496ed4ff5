from __future__ import annotations

import math

import numpy as np
import pytest

from starlike_radius.core.errors import DomainError, ParameterError, UnsupportedPairError
from starlike_radius.envelope import (
    R_MAX,
    ClassParams,
    Family,
    Method,
    derive_params,
    envelope_params,
    growth,
    margin,
    radius_by_crossing,
    supported_regions,
)
from starlike_radius.regions import ALL_KINDS, RegionKind, RegionSpec, disk_bound

HALFPLANE = RegionSpec(RegionKind.HALFPLANE)


def test_derived_parameters() -> None:
    f1 = derive_params(Family.F1, -1.0, -1.0)
    assert (f1.cp, f1.d) == (2.0, 2.0)
    assert f1.s == 4.0 and f1.p == 4.0

    trivial = derive_params("f1", -0.2, -1.0 / 3.0)
    assert trivial.cp == pytest.approx(0.0, abs=1e-15)
    assert trivial.d == pytest.approx(0.0, abs=1e-15)

    f3 = derive_params(Family.F3, -1.0 / 3.0, 0.7)
    assert f3.bp == pytest.approx(0.0, abs=1e-15)
    assert f3.cp is None and f3.d is None


def test_second_family_warns_when_dp_exceeds_one(caplog: pytest.LogCaptureFixture) -> None:
    quiet = derive_params(Family.F2, 0.0, 0.0)
    assert quiet.warning == ""

    with caplog.at_level("WARNING", logger="starlike_radius.envelope"):
        loud = derive_params(Family.F2, -0.5, 0.0)

    assert loud.dp == pytest.approx(2.0)
    assert "dp = 2 > 1" in loud.warning
    assert "exceeds the coefficient bound" in caplog.text


@pytest.mark.parametrize(("b", "c"), [(1.5, 0.0), (0.0, -1.2), (math.nan, 0.0)])
def test_coefficients_out_of_range(b: float, c: float) -> None:
    with pytest.raises(DomainError):
        derive_params(Family.F1, b, c)


def test_envelope_hypothesis_violation() -> None:
    with pytest.raises(ParameterError, match="d = 4"):
        derive_params(Family.F1, -1.0, -1.0 / 3.0)

    relaxed = derive_params(Family.F1, -1.0, -1.0 / 3.0, strict=False)
    assert relaxed.d == pytest.approx(4.0)
    assert "exceeds 2" in relaxed.warning


def test_envelope_params_constructor() -> None:
    params = envelope_params(Family.F1, cp=0.5, d=1.5)

    assert params.s == 2.0
    assert math.isnan(params.b)
    with pytest.raises(ParameterError):
        envelope_params(Family.F1, cp=0.5)
    with pytest.raises(ParameterError):
        envelope_params(Family.F3, bp=2.5)


def test_second_coefficients_follow_family() -> None:
    assert derive_params(Family.F1, 0.2, -0.2).second_coefficients == pytest.approx((1.0, -0.6))
    assert derive_params(Family.F2, 0.2, -0.2).second_coefficients == pytest.approx((0.8, -0.6))
    assert derive_params(Family.F3, 0.2).second_coefficients == (pytest.approx(0.6), None)


def test_growth_values() -> None:
    a, L = growth(envelope_params(Family.F1, cp=0.0, d=0.0), 0.5)
    assert a == pytest.approx(4.0 / 3.0)
    assert L == pytest.approx(2.8)
    assert L == pytest.approx(3.28125 / 1.171875)

    assert growth(envelope_params(Family.F3, bp=2.0), 0.5)[1] == pytest.approx(2.0)
    assert growth(envelope_params(Family.F2, cp=0.0, dp=0.0), 0.5)[1] == pytest.approx(2.4)
    assert growth(derive_params(Family.F1, 0.3, 0.1), 0.0) == (1.0, 0.0)


def test_growth_is_vectorized_and_increasing() -> None:
    radii = np.linspace(0.0, 0.99, 200)
    a, L = growth(derive_params(Family.F2, 0.1, 0.2), radii)

    assert a.shape == L.shape == radii.shape
    assert np.all(np.diff(L) > 0.0)


@pytest.mark.parametrize("r", [-0.1, 1.0, math.nan])
def test_growth_rejects_radius(r: float) -> None:
    with pytest.raises(DomainError):
        growth(derive_params(Family.F3, 0.0), r)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_margin_at_origin_is_disk_bound(kind: RegionKind) -> None:
    region = RegionSpec(kind, alpha=0.3, gamma=0.4)
    params = derive_params(Family.F1, 0.1, -0.2)

    assert margin(params, region, 0.0) == pytest.approx(disk_bound(region, 1.0))
    assert margin(params, region, 0.0) > 0.0


def test_margin_examples() -> None:
    assert margin(derive_params(Family.F1, -1.0, -1.0), HALFPLANE, 0.2) == pytest.approx(0.0, abs=1e-12)
    assert margin(derive_params(Family.F2, 0.0, 0.0), RegionSpec(RegionKind.SINE), 0.0) == pytest.approx(math.sin(1.0))
    assert margin(derive_params(Family.F3, -1.0), RegionSpec(RegionKind.PARABOLA), 0.1) > 0.0


def test_margin_is_minus_infinity_past_feasibility() -> None:
    value = margin(derive_params(Family.F1, 0.0, 0.0), RegionSpec(RegionKind.RATIONAL_RL), 0.9)

    assert value == -math.inf


SQRT2 = math.sqrt(2.0)


@pytest.mark.parametrize(
    ("params", "region", "expected"),
    [
        (derive_params(Family.F1, -1.0, -1.0), HALFPLANE, 0.2),
        (derive_params(Family.F3, -1.0), HALFPLANE, 1.0 / 3.0),
        (derive_params(Family.F3, -1.0 / 3.0), HALFPLANE, SQRT2 - 1.0),
        (envelope_params(Family.F1, cp=0.0, d=0.0), HALFPLANE, 0.307774),
        (derive_params(Family.F1, -1.0, -1.0), RegionSpec(RegionKind.LEMNISCATE), (-5.0 + math.sqrt(33.0 - 4.0 * SQRT2)) / (2.0 * SQRT2)),
        (derive_params(Family.F3, -1.0), RegionSpec(RegionKind.LEMNISCATE), (-3.0 + math.sqrt(17.0 - 4.0 * SQRT2)) / (2.0 * SQRT2)),
        (derive_params(Family.F3, -1.0), RegionSpec(RegionKind.PARABOLA), 3.0 - 2.0 * SQRT2),
    ],
)
def test_radius_by_crossing_examples(params: ClassParams, region: RegionSpec, expected: float) -> None:
    result = radius_by_crossing(params, region)

    tolerance = 1e-6 if expected == 0.307774 else 1e-10
    assert result.radius == pytest.approx(expected, abs=tolerance)
    assert result.method is Method.CROSSING
    assert result.residual <= 1e-10
    assert result.bracket[0] <= result.radius <= result.bracket[1]
    assert result.bracket[1] - result.bracket[0] <= 1e-12
    assert not result.whole_disk


def test_crossing_root_is_first_sign_change() -> None:
    params = derive_params(Family.F2, -0.25, -0.5)
    region = RegionSpec(RegionKind.NEPHROID)
    result = radius_by_crossing(params, region)

    below = np.linspace(1e-6, result.radius - 1e-9, 500)
    assert np.all(margin(params, region, below) > 0.0)


def test_sector_of_order_one_is_the_halfplane() -> None:
    params = derive_params(Family.F1, -0.5, -0.5)

    sector = radius_by_crossing(params, RegionSpec(RegionKind.SECTOR, gamma=1.0)).radius
    halfplane = radius_by_crossing(params, HALFPLANE).radius

    assert sector == pytest.approx(halfplane, abs=1e-10)


def test_monotone_in_envelope_parameters() -> None:
    grid = (0.0, 0.5, 1.0, 1.5, 2.0)
    radii = np.array(
        [[radius_by_crossing(envelope_params(Family.F1, cp=cp, d=d), HALFPLANE).radius for d in grid] for cp in grid]
    )

    assert np.all(np.diff(radii, axis=0) <= 1e-12)
    assert np.all(np.diff(radii, axis=1) <= 1e-12)


def test_strictly_decreasing_in_alpha() -> None:
    params = derive_params(Family.F3, 0.0)
    radii = [radius_by_crossing(params, RegionSpec(RegionKind.HALFPLANE, alpha=a)).radius for a in (0.0, 0.25, 0.5, 0.75)]

    assert all(later < earlier for earlier, later in zip(radii, radii[1:]))


def test_unsupported_pair() -> None:
    params = derive_params(Family.F3, -1.0)

    assert len(supported_regions(Family.F3)) == 4
    with pytest.raises(UnsupportedPairError) as info:
        radius_by_crossing(params, RegionSpec(RegionKind.NEPHROID))
    assert info.value.family is Family.F3


def test_whole_disk_outcome_below_a_small_cap() -> None:
    result = radius_by_crossing(derive_params(Family.F1, -1.0, -1.0), HALFPLANE, r_max=0.1)

    assert result.whole_disk
    assert result.radius == 0.1
    assert math.isnan(result.residual)
    assert R_MAX < 1.0
