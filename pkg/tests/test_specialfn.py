"""Unit tests for the flat radial series and its exact coefficient algebra."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import i0 as bessel_i0

from radialnet.specialfn import (
    FdCoefficients,
    a_n_closed,
    a_n_sum,
    alpha_coeff,
    double_factorial,
    fd_eval_closed,
    fd_eval_exact,
    fd_eval_series,
    fd_series_partial_exact,
)


def test_double_factorial_small_values():
    assert double_factorial(0) == 1
    assert double_factorial(1) == 1
    assert double_factorial(2) == 2
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
    assert double_factorial(9) == 945


def test_alpha_closed_forms():
    for d in range(1, 20):
        assert alpha_coeff(d, 0) == 1
        assert alpha_coeff(d, 1) == Fraction(1, 2 * d)
        assert alpha_coeff(d, 2) == Fraction(1, 8 * d * (d + 2))
    # one-dimensional series is cosh: alpha_{2k}(1) = 1/(2k)!
    for k in range(8):
        assert alpha_coeff(1, k) == Fraction(1, math.factorial(2 * k))
    # three-dimensional series is sinh(z)/z: alpha_{2k}(3) = 1/(2k+1)!
    for k in range(8):
        assert alpha_coeff(3, k) == Fraction(1, math.factorial(2 * k + 1))
    # two-dimensional series is I0(z): alpha_{2k}(2) = 1/(4^k (k!)^2)
    for k in range(8):
        assert alpha_coeff(2, k) == Fraction(1, 4**k * math.factorial(k) ** 2)


def test_alpha_ratio_recurrence():
    for d in (2, 5, 17):
        for k in range(12):
            assert alpha_coeff(d, k + 1) == alpha_coeff(d, k) / (
                (2 * k + 2) * (d + 2 * k)
            )


def test_fd_matches_elementary_oracles():
    zs = np.linspace(0.0, 6.0, 31)
    for z in zs:
        z = float(z)
        assert fd_eval_series(1, z) == pytest.approx(math.cosh(z), rel=1e-12)
        assert fd_eval_series(2, z) == pytest.approx(float(bessel_i0(z)), rel=1e-12)
        expected3 = 1.0 if z == 0 else math.sinh(z) / z
        assert fd_eval_series(3, z) == pytest.approx(expected3, rel=1e-12)


def test_series_and_closed_agree_spot():
    for d in (2, 7, 33, 64):
        for z in (0.0, 0.1, 0.77, 1.0, 3.5, 9.0):
            assert abs(fd_eval_series(d, z) - fd_eval_closed(d, z)) <= 1e-10


def test_series_monotone_in_z_and_d():
    # increasing in z; decreasing in d (each coefficient shrinks with d)
    assert fd_eval_series(4, 0.5) < fd_eval_series(4, 1.5)
    assert fd_eval_series(12, 1.0) < fd_eval_series(4, 1.0)


def test_fd_coefficients_table():
    table = FdCoefficients.build(5, 10)
    assert table.d == 5
    assert table.order == 10
    for k in range(11):
        assert table.coeffs[k] == alpha_coeff(5, k)


def test_fd_eval_exact_brackets_series():
    z = Fraction(3, 4)
    tol = Fraction(1, 10**12)
    s = fd_eval_exact(3, z, tol)
    richer = fd_series_partial_exact(3, z, 60)
    assert s <= richer <= s + tol


def test_a_n_identity_exact_small():
    for d in range(2, 8):
        for n in range(0, 9):
            lhs = a_n_sum(d, n)
            rhs = a_n_closed(d, n)
            assert lhs == rhs
            if n % 2 == 1:
                assert lhs == 0
            else:
                assert lhs > 0


def test_a_n_closed_even_form():
    # even n: (d-2)!! / (n!! (d+n-2)!!)
    assert a_n_closed(4, 2) == Fraction(
        double_factorial(2), double_factorial(2) * double_factorial(4)
    )
    assert a_n_closed(3, 4) == Fraction(
        double_factorial(1), double_factorial(4) * double_factorial(5)
    )
