"""Unit tests for sphere quadrature: rotations, designs, product rules."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from radialnet.quadrature import (
    direction_design,
    random_rotation,
    sphere_product_rule_s2,
)
from radialnet.sphere import SeededRng


def _exact_sphere_moment_s2(a: int, b: int, c: int) -> float:
    """E[x1^a x2^b x3^c] over the uniform sphere S^2, exact formula."""
    if a % 2 or b % 2 or c % 2:
        return 0.0

    def dfact(m: int) -> int:
        out = 1
        while m > 1:
            out *= m
            m -= 2
        return out

    num = dfact(a - 1) * dfact(b - 1) * dfact(c - 1)
    den = dfact(a + b + c + 1)
    return num / den


def test_random_rotation_orthogonal():
    rot = random_rotation(5, SeededRng(3))
    eye = rot @ rot.T
    assert np.max(np.abs(eye - np.eye(5))) < 1e-12
    assert np.linalg.det(rot) == pytest.approx(1.0, abs=1e-10)


def test_product_rule_weights_positive_sum_one():
    for degree in (3, 5, 7, 11):
        nodes, weights = sphere_product_rule_s2(degree)
        assert nodes.shape[1] == 3
        assert np.max(np.abs(np.linalg.norm(nodes, axis=1) - 1)) < 1e-12
        assert np.all(weights > 0)
        assert abs(float(np.sum(weights)) - 1.0) < 1e-13


def test_product_rule_integrates_monomials_exactly():
    degree = 7
    nodes, weights = sphere_product_rule_s2(degree)
    for a in range(0, degree + 1):
        for b in range(0, degree + 1 - a):
            for c in range(0, degree + 1 - a - b):
                quad = float(
                    np.sum(weights * nodes[:, 0] ** a * nodes[:, 1] ** b * nodes[:, 2] ** c)
                )
                assert quad == pytest.approx(
                    _exact_sphere_moment_s2(a, b, c), abs=5e-13
                ), (a, b, c)


def test_direction_design_antipodal_unit():
    for d in (2, 3, 6):
        dirs = direction_design(d, SeededRng(4))
        assert dirs.shape[1] == d
        assert np.max(np.abs(np.linalg.norm(dirs, axis=1) - 1)) < 1e-12
        # antipodal closure: for each u, -u is in the set
        for u in dirs:
            dists = np.linalg.norm(dirs + u, axis=1)
            assert float(np.min(dists)) < 1e-9


def test_direction_design_degree_two_moments():
    # E u_i u_j = delta_ij / d must hold exactly for antipodal designs with
    # degree >= 3 exactness
    for d in (3, 5):
        dirs = direction_design(d, SeededRng(8))
        m2 = dirs.T @ dirs / dirs.shape[0]
        assert np.max(np.abs(m2 - np.eye(d) / d)) < 1e-10


def test_direction_design_rotations_extend():
    one = direction_design(4, SeededRng(10), rotations=1)
    two = direction_design(4, SeededRng(10), rotations=2)
    assert two.shape[0] == 2 * one.shape[0]
    assert np.array_equal(two[: one.shape[0]], one)
