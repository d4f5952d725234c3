from fractions import Fraction

import pytest

from rumortree import range_bounds as rb

F = Fraction
GRID = [F(j, 1000) for j in range(1000)]


def test_alpha_at_zero_and_one():
    assert rb.extinction_time_cdf_bounds(0) == (0.0, 0.0)
    a1, a2 = rb.extinction_time_cdf_bounds(1)
    assert a1 == pytest.approx(13 / 45, abs=1e-15)
    assert a2 == pytest.approx(1 / 3, abs=1e-15)


def test_range_cdf_bounds_row_zero():
    assert rb.range_cdf_bounds(0) == (0.0, 0.0)


def test_bounds_tend_to_one():
    lo, hi = rb.range_cdf_bounds(400)
    assert lo == pytest.approx(1, abs=1e-15) and hi == pytest.approx(1, abs=1e-15)


def test_gf_certificates_at_one():
    for g in (rb.LOWER_GF, rb.UPPER_GF):
        assert g(F(1)) == 1
        assert g.derivative(F(1)) == F(8, 9)
    assert rb.offspring_gf(F(1)) == 1


def test_h_negative_on_grid():
    assert all(rb.h_criterion(s) < 0 for s in GRID)
    assert rb.h_criterion(F(1)) == 0


def test_sandwich_on_grid():
    assert all(rb.LOWER_GF(s) <= rb.offspring_gf(s) <= rb.UPPER_GF(s) for s in GRID)


def test_upper_bound_fails_below_zero():
    # the sandwich is only needed, and only holds, on [0, 1]
    s = F(-1, 2)
    assert rb.UPPER_GF(s) < rb.offspring_gf(s)
    assert all(rb.LOWER_GF(-x) <= rb.offspring_gf(-x) for x in GRID)


@pytest.mark.parametrize("n", range(0, 61))
def test_composition_reproduces_alpha(n):
    a1, a2 = rb.extinction_time_cdf_bounds(n)
    assert float(rb.LOWER_GF.iterate(n, F(0))) == pytest.approx(a1, abs=1e-10)
    assert float(rb.UPPER_GF.iterate(n, F(0))) == pytest.approx(a2, abs=1e-10)


@pytest.mark.parametrize("n", range(0, 80))
def test_exact_cdf_between_bounds(n):
    a1, a2 = rb.extinction_time_cdf_bounds(n)
    exact = rb.extinction_time_cdf(n)
    assert a1 - 1e-12 <= exact <= a2 + 1e-12
    lo, hi = rb.range_cdf_bounds(n)
    assert lo - 1e-12 <= rb.range_cdf(n) <= hi + 1e-12


def test_mix_over_root_exact():
    assert rb.mix_over_root(F(1, 2)) == F(3, 18) + F(4, 36) + F(2, 72)


def test_series_constants():
    constants = rb.expected_range_bounds().constants()
    expected = {"lower_p1": 4.461943390, "upper_p1": 4.979139429,
                "lower_p2": 2.098255663, "upper_p2": 2.359167849,
                "lower_p3": 1.518974334, "upper_p3": 1.680386522}
    for key, value in expected.items():
        assert constants[key] == pytest.approx(value, abs=1e-9)


def test_enclosure():
    bounds = rb.expected_range_bounds()
    assert bounds.lower == pytest.approx(6.14437, abs=1e-5)
    assert bounds.upper == pytest.approx(7.44707, abs=1e-5)
    # E[R] = sum_n P(R > n) from the exact cdf lies inside
    exact = sum(1 - rb.range_cdf(n) for n in range(600))
    assert bounds.lower <= exact <= bounds.upper


def test_series_enclosures_are_ordered():
    bounds = rb.expected_range_bounds()
    for enc in bounds.series.values():
        assert enc.lower <= enc.upper and enc.upper - enc.lower < 1e-10


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        rb.extinction_time_cdf_bounds(-1)
    with pytest.raises(ValueError):
        rb.h_criterion(1.5)
    with pytest.raises(ValueError):
        rb.expected_range_bounds(series_tol=1e-3)
