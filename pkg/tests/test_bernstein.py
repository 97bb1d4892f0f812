"""Unit tests for Bernstein-form polynomials and the even approximation."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from radialnet.bernstein import (
    BernsteinPoly,
    EvenPolynomial,
    even_poly_approx,
    profile_values,
)
from radialnet.profiles import get_profile, profile_abs_half, profile_const, profile_square


def test_decasteljau_matches_sympy_expansion():
    coeffs = (Fraction(3, 4), Fraction(-1, 4), Fraction(3, 4), Fraction(1, 8))
    poly = BernsteinPoly(coeffs=coeffs)
    s = sympy.Symbol("s")
    n = poly.degree
    expr = sum(
        sympy.Rational(c) * sympy.binomial(n, nu) * s**nu * (1 - s) ** (n - nu)
        for nu, c in enumerate(coeffs)
    )
    for point in (0.0, 0.125, 0.5, 0.83, 1.0):
        ref = float(expr.subs(s, sympy.Rational(point).limit_denominator(10**9)))
        assert poly.eval(np.array(point)) == pytest.approx(ref, abs=1e-14)


def test_to_monomial_matches_sympy():
    coeffs = (Fraction(1), Fraction(0), Fraction(-2), Fraction(5, 3), Fraction(1, 7))
    poly = BernsteinPoly(coeffs=coeffs)
    s = sympy.Symbol("s")
    n = poly.degree
    expr = sympy.expand(
        sum(
            sympy.Rational(c) * sympy.binomial(n, nu) * s**nu * (1 - s) ** (n - nu)
            for nu, c in enumerate(coeffs)
        )
    )
    mono = poly.to_monomial()
    ref = sympy.Poly(expr, s).all_coeffs()[::-1]  # ascending
    ref += [sympy.Integer(0)] * (len(mono) - len(ref))
    for ours, theirs in zip(mono, ref):
        assert ours == Fraction(int(sympy.fraction(theirs)[0]), int(sympy.fraction(theirs)[1]))


def test_derivative_exact():
    coeffs = (Fraction(0), Fraction(1, 2), Fraction(1, 3))
    poly = BernsteinPoly(coeffs=coeffs)
    deriv = poly.derivative()
    s = sympy.Symbol("s")
    expr = sum(
        sympy.Rational(c) * sympy.binomial(2, nu) * s**nu * (1 - s) ** (2 - nu)
        for nu, c in enumerate(coeffs)
    )
    dexpr = sympy.diff(expr, s)
    for point in (0.0, 0.3, 1.0):
        ref = float(dexpr.subs(s, sympy.Rational(point).limit_denominator(10**9)))
        assert deriv.eval(np.array(point)) == pytest.approx(ref, abs=1e-13)


def test_even_poly_square_degree_two_frozen():
    poly = even_poly_approx(profile_square(), 0.5, degree_override=2)
    assert poly.degree == 2
    assert poly.shift == Fraction(1, 4)
    assert poly.coeffs == (Fraction(1, 4), Fraction(1, 2))
    # shift + 1/4 + z^2/2 == (1 + z^2)/2, the Bernstein image of z^2 at n=2
    grid = np.linspace(0, 1, 50)
    assert np.max(np.abs(poly.eval_with_shift(grid) - (1 + grid**2) / 2)) < 1e-14


def test_even_poly_square_dyadic_degree_collapses_exactly():
    # with a power-of-two degree the samples are exact dyadics, so the
    # operator identity B_n(z^2) = z^2 + (1 - z^2)/n holds with zero crumbs
    poly = even_poly_approx(profile_square(), 0.5, degree_override=8)
    assert poly.shift == Fraction(1, 4)
    assert poly.coeffs[0] == Fraction(1, 8) - Fraction(1, 4)
    assert poly.coeffs[1] == Fraction(7, 8)
    assert all(c == 0 for c in poly.coeffs[2:])
    assert poly.measured_error == pytest.approx(1 / 8, abs=1e-12)


def test_even_poly_constant_profile_zero_poly():
    poly = even_poly_approx(profile_const(0.3125), 0.25, degree_override=4)
    assert poly.shift == Fraction(5, 16)
    assert all(c == 0 for c in poly.coeffs)
    assert poly.measured_error == 0.0


def test_even_poly_default_degree_formula():
    # n = 2 * ceil(4 / eps^3)
    poly = even_poly_approx(profile_abs_half(), 0.5)
    assert poly.degree == 64
    poly2 = even_poly_approx(get_profile("linear"), 0.7, grid_points=129)
    assert poly2.degree == 2 * math.ceil(4 / 0.7**3)
    assert poly2.measured_error <= 0.7


def test_even_poly_rejects_odd_override():
    with pytest.raises(ValueError):
        even_poly_approx(profile_square(), 0.5, degree_override=3)


def test_even_poly_error_decreases_along_ladder():
    prof = profile_abs_half()
    errs = [
        even_poly_approx(prof, 0.5, degree_override=n).measured_error
        for n in (8, 16, 32, 64)
    ]
    assert errs[-1] < errs[0]
    assert min(errs) == errs[-1] or errs[-1] <= min(errs) * 1.5


def test_even_poly_eval_deriv_matches_difference_quotient():
    poly = even_poly_approx(get_profile("cosine"), 0.4, degree_override=12)
    grid = np.linspace(0.05, 0.95, 9)
    h = 1e-6
    numeric = (poly.eval(grid + h) - poly.eval(grid - h)) / (2 * h)
    assert np.max(np.abs(poly.eval_deriv(grid) - numeric)) < 1e-5


def test_profile_values_scalar_fallback_and_vec_agree():
    prof = get_profile("cosine")
    grid = np.linspace(0, 1, 17)
    vec = profile_values(prof, grid)
    scalars = np.array([prof.eval(float(r)) for r in grid])
    assert np.allclose(vec, scalars, atol=1e-15, rtol=0)
