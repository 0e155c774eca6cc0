"""Tests for truncated power series arithmetic."""

import math

import pytest
from scipy.special import binom

from hunter_profiles.numerics import TruncatedSeries


def test_product_and_reciprocal() -> None:
    a = TruncatedSeries([1.0, 2.0, 3.0])
    b = TruncatedSeries([2.0, -1.0, 0.5])

    assert (a * b).c.tolist() == pytest.approx([2.0, 3.0, 4.5])
    identity = a * a.reciprocal()
    assert identity.c.tolist() == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)


def test_geometric_series_reciprocal() -> None:
    one_minus_t = TruncatedSeries([1.0, -1.0], order=6)

    assert one_minus_t.reciprocal().c.tolist() == pytest.approx([1.0] * 7)


def test_real_power_matches_binomial_coefficients() -> None:
    alpha = -2.2
    series = TruncatedSeries([1.0, 1.0], order=8) ** alpha

    expected = [binom(alpha, n) for n in range(9)]
    assert series.c.tolist() == pytest.approx(expected, rel=1e-13)


def test_power_rejects_nonpositive_leading_term() -> None:
    with pytest.raises(ValueError):
        TruncatedSeries([0.0, 1.0]) ** 0.5
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries([0.0, 1.0]).reciprocal()


def test_mixed_orders_truncate_to_smaller() -> None:
    long = TruncatedSeries([1.0, 1.0, 1.0, 1.0])
    short = TruncatedSeries([1.0, 1.0])

    assert (long + short).order == 1
    assert (long * short).c.tolist() == pytest.approx([1.0, 2.0])


def test_derivative_keeps_order_and_evaluation() -> None:
    y = TruncatedSeries.variable(2.0, 4)
    cube = y * y * y

    assert cube.deriv().order == 4
    assert cube(0.5) == pytest.approx(2.5**3)
    assert cube.deriv()(0.5) == pytest.approx(3 * 2.5**2)
    assert (1.0 - y)(0.0) == pytest.approx(-1.0)
    assert (3.0 / y)(0.0) == pytest.approx(1.5)
    assert math.isclose((y / 2.0)[1], 0.5)
