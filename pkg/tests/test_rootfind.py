from __future__ import annotations

import math

import numpy as np
import pytest

from starlike_radius.core.errors import DomainError, EvaluationError, NoRootError
from starlike_radius.rootfind import ZERO_ACCEPT, evaluate, make_polynomial, smallest_root


def test_smallest_of_several_roots() -> None:
    p = make_polynomial([0.06, -0.5, 1.0])  # roots 0.2 and 0.3

    found = smallest_root(p, 0.0, 1.0)

    assert found.root == pytest.approx(0.2, abs=1e-12)
    assert found.lo <= found.root <= found.hi
    assert found.width <= 1e-12


def test_vectorized_scan_matches_scalar_scan() -> None:
    p = make_polynomial([-0.25, 0.0, 1.0])

    scalar = smallest_root(p, 0.0, 1.0)
    vector = smallest_root(p, 0.0, 1.0, vectorized=True)

    assert scalar.root == pytest.approx(0.5, abs=1e-12)
    assert vector.root == pytest.approx(scalar.root, abs=1e-13)


def test_transcendental_function() -> None:
    found = smallest_root(lambda r: math.cos(3.0 * r) - r, 0.0, 1.0)

    assert math.cos(3.0 * found.root) == pytest.approx(found.root, abs=1e-11)


def test_grid_point_zero_is_accepted() -> None:
    # 0.5 lies on the default grid
    found = smallest_root(lambda r: r - 0.5, 0.0, 1.0)

    assert found.root == 0.5
    assert found.residual <= ZERO_ACCEPT


def test_endpoint_zero_is_not_a_root() -> None:
    with pytest.raises(NoRootError):
        smallest_root(lambda r: r * (r + 1.0), 0.0, 1.0)


def test_double_root_without_sign_change_is_missed() -> None:
    with pytest.raises(NoRootError) as info:
        smallest_root(lambda r: (r - 0.3001) ** 2 + 1e-6, 0.0, 1.0)

    assert info.value.lo == 0.0
    assert info.value.hi == 1.0


def test_non_finite_value_before_root_raises() -> None:
    with pytest.raises(EvaluationError):
        smallest_root(lambda r: 1.0 / (r - 0.25) if r != 0.25 else math.inf, 0.0, 1.0)


def test_vectorized_ignores_values_after_first_root() -> None:
    def f(r: np.ndarray) -> np.ndarray:
        return np.where(r < 0.6, 0.3 - r, np.nan)

    found = smallest_root(f, 0.0, 1.0, vectorized=True)

    assert found.root == pytest.approx(0.3, abs=1e-12)


@pytest.mark.parametrize(
    ("kwargs", "message"),
    [
        ({"scan_n": 10}, "scan_n"),
        ({"tol": 0.0}, "tol"),
        ({"lo": 1.0, "hi": 0.5}, "empty interval"),
    ],
)
def test_invalid_arguments(kwargs: dict, message: str) -> None:
    options = {"lo": 0.0, "hi": 1.0, **kwargs}
    lo, hi = options.pop("lo"), options.pop("hi")

    with pytest.raises(DomainError, match=message):
        smallest_root(lambda r: r - 0.5, lo, hi, **options)


def test_polynomial_helpers() -> None:
    p = make_polynomial([1.0, 2.0, 0.0, 0.0])

    assert list(p.coef) == [1.0, 2.0]
    assert evaluate(p, 0.5) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        make_polynomial([1.0, math.nan])
