"""Shared exact test utilities."""

from fractions import Fraction

from jetinv.exact import ExactMatrix, linear_solve


def poly_coeffs_from_samples(xs, values):
    """Coefficients of the unique degree < len(xs) polynomial through the
    given exact sample points, by solving the Vandermonde system."""
    xs = [Fraction(x) for x in xs]
    values = [Fraction(v) for v in values]
    n = len(xs)
    vander = ExactMatrix(n, n, [[x**j for j in range(n)] for x in xs])
    sol = linear_solve(vander, values)
    assert sol is not None, "sample points must be distinct"
    return list(sol)


def linear_coefficient(xs, values):
    return poly_coeffs_from_samples(xs, values)[1]
