"""Interpolation, growth estimates and Gaussian factorials."""

from fractions import Fraction

import pytest

from nilorbit.counting import (
    CountPolynomial,
    CountSeries,
    InterpolationError,
    first_primes,
    gaussian_factorial,
    gaussian_factorial_poly,
    gaussian_int,
    growth_exponent,
    interpolate,
    poly_mul,
    slope_dim,
    slope_estimates,
)


def test_series_validation():
    with pytest.raises(ValueError):
        CountSeries.of([(5, 1), (3, 1)])
    with pytest.raises(ValueError):
        CountSeries.of([(3, 1), (3, 2)])
    with pytest.raises(ValueError):
        CountSeries.of([(3, -1)])


def test_interpolate_examples():
    poly = interpolate(CountSeries.of([(2, 1), (3, 1)]), 0)
    assert poly.coefficients == (Fraction(1),)
    poly = interpolate(CountSeries.of([(2, 3), (3, 4), (5, 6)]), 1)
    assert poly.coefficients == (Fraction(1), Fraction(1))
    assert poly.degree == 1 and poly.leading == 1


def test_interpolate_needs_enough_points():
    with pytest.raises(ValueError):
        interpolate(CountSeries.of([(2, 1)]), 1)


def test_interpolate_surfaces_residual():
    # 2^q is not a polynomial of degree 2
    series = CountSeries.of([(2, 4), (3, 8), (5, 32), (7, 128)])
    with pytest.raises(InterpolationError):
        interpolate(series, 2)


def test_interpolate_reproduces_flag_counts():
    series = CountSeries.of([(q, gaussian_factorial(3, q)) for q in (2, 3, 5, 7)])
    poly = interpolate(series, 3)
    assert [int(c) for c in poly.coefficients] == gaussian_factorial_poly(3)
    assert poly(11) == gaussian_factorial(3, 11)


def test_polynomial_evaluation():
    poly = CountPolynomial((Fraction(1), Fraction(0), Fraction(2)))
    assert poly(3) == 19
    assert poly.degree == 2
    assert poly.leading == 2


def test_slope_examples():
    assert slope_dim(CountSeries.of([(3, 27), (5, 125), (7, 343)])) == 3
    assert slope_dim(CountSeries.of([(3, 12), (5, 30), (7, 56)])) == 2
    with pytest.raises(ValueError):
        slope_dim(CountSeries.of([(3, 0), (5, 1)]))
    with pytest.raises(ValueError):
        # (p-1)^2 growth disagrees between the pairs at these primes
        slope_dim(CountSeries.of([(3, 4), (5, 16), (7, 36)]))


def test_slope_estimates_values():
    assert slope_estimates(CountSeries.of([(3, 9), (5, 25), (7, 49)])) == [2, 2]


def test_growth_exponent_handles_drift():
    # |GL_2(F_p)| = p^4 (1 - 1/p)(1 - 1/p^2): consecutive pairs disagree
    series = CountSeries.of([(3, 48), (5, 480), (7, 2016)])
    with pytest.raises(ValueError):
        slope_dim(series)
    assert growth_exponent(series) == 4
    assert growth_exponent(CountSeries.of([(3, 12), (5, 30), (7, 56)])) == 2
    with pytest.raises(ValueError):
        growth_exponent(CountSeries.of([(3, 1), (5, 1), (7, 0)]))


def test_gaussian_values():
    assert gaussian_int(1, 5) == 1
    assert gaussian_int(3, 2) == 7
    assert gaussian_factorial(0, 5) == 1
    assert gaussian_factorial(2, 3) == 4
    assert gaussian_factorial(4, 2) == 1 * 3 * 7 * 15


def test_gaussian_factorial_poly():
    assert gaussian_factorial_poly(0) == [1]
    assert gaussian_factorial_poly(2) == [1, 1]
    assert gaussian_factorial_poly(4) == [1, 3, 5, 6, 5, 3, 1]
    for q in (2, 3, 5):
        val = sum(c * q**i for i, c in enumerate(gaussian_factorial_poly(4)))
        assert val == gaussian_factorial(4, q)


def test_poly_mul():
    assert poly_mul([1, 1], [1, 1]) == [1, 2, 1]
    assert poly_mul([], [1]) == []


def test_first_primes():
    assert first_primes(3) == [2, 3, 5]
    assert first_primes(2, minimum=4) == [5, 7]
    assert first_primes(1, minimum=8) == [11]
