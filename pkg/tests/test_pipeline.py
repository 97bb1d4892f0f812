"""Unit tests for the profile-to-network pipeline and its width accounting."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from radialnet.monomial import WidthOverflowError, monomial_theoretical_width
from radialnet.pipeline import (
    DEGREE_LADDER,
    _monomial_width_exact,
    build_radial_network,
    theoretical_width,
    theoretical_width_report,
)
from radialnet.profiles import get_profile, profile_const
from radialnet.sphere import SeededRng


def test_degree_ladder_even_increasing():
    assert all(n % 2 == 0 for n in DEGREE_LADDER)
    assert list(DEGREE_LADDER) == sorted(DEGREE_LADDER)
    assert DEGREE_LADDER[0] <= 4 and DEGREE_LADDER[-1] >= 64


def test_constant_profile_routes_to_width_zero():
    net, report, plan = build_radial_network(
        profile_const(0.375), 4, 0.2, rng=SeededRng(1), verify_budget=8192, verify_restarts=2
    )
    assert plan.route == "constant"
    assert net.width == 0
    assert report.sup_estimate <= 1e-12


def test_square_routes_per_monomial_any_dimension():
    net, report, plan = build_radial_network(
        get_profile("square"), 5, 0.2, rng=SeededRng(2), verify_budget=8192, verify_restarts=2
    )
    assert plan.route == "per_monomial"
    assert report.sup_estimate <= 0.2
    assert sum(plan.component_widths.values()) == plan.total_width == net.width


def test_linear_routes_ridge_d3():
    net, report, plan = build_radial_network(
        get_profile("linear"), 3, 0.25, rng=SeededRng(3), verify_budget=8192, verify_restarts=2
    )
    assert plan.route == "ridge"
    assert report.sup_estimate <= 0.25
    assert net.activation == "relu"


def test_linear_d1_ridge():
    net, report, plan = build_radial_network(
        get_profile("linear"), 1, 0.25, rng=SeededRng(4), verify_budget=8192, verify_restarts=2
    )
    assert plan.route == "ridge"
    assert report.sup_estimate <= 0.25


def test_rough_profile_wrong_dimension_fails_honestly():
    with pytest.raises(RuntimeError, match="no tuned route"):
        build_radial_network(
            get_profile("abs_half"), 2, 0.2, rng=SeededRng(5), verify_budget=4096, verify_restarts=2
        )


def test_ridge_requires_relu():
    with pytest.raises((RuntimeError, ValueError)):
        build_radial_network(
            get_profile("linear"), 3, 0.25, activation="exp", rng=SeededRng(6),
            verify_budget=4096, verify_restarts=2,
        )


def test_plan_as_dict_complete():
    _, _, plan = build_radial_network(
        get_profile("square"), 3, 0.25, rng=SeededRng(7), verify_budget=4096, verify_restarts=2
    )
    payload = plan.as_dict()
    for key in ("profile_label", "d", "epsilon", "route", "total_width", "component_widths"):
        assert key in payload


def test_theoretical_mode_always_overflows():
    with pytest.raises(WidthOverflowError):
        build_radial_network(
            get_profile("linear"), 3, 0.5, mode="theoretical", rng=SeededRng(8)
        )
    with pytest.raises(WidthOverflowError) as exc_info:
        build_radial_network(
            get_profile("abs_half"), 3, 0.05, mode="theoretical", rng=SeededRng(9)
        )
    assert exc_info.value.required_width_log10 > 10**9


def test_theoretical_width_exact_tier():
    w = theoretical_width(3, 0.98)
    report = theoretical_width_report(3, 0.98)
    assert report["tier"] == "exact"
    assert isinstance(w, int) and w > 500_000
    # the gammaln-based log10 must agree closely with the exact integer
    assert math.log10(w) == pytest.approx(report["total_width_log10"], rel=2e-3)


def test_theoretical_width_power_of_ten_tier():
    report = theoretical_width_report(2, 0.5)
    assert report["tier"] == "power_of_ten"
    w = theoretical_width(2, 0.5)
    exponent = int(math.floor(report["total_width_log10"]))
    assert w == 10**exponent
    assert exponent > 10**6


def test_theoretical_width_overflow_tier():
    report = theoretical_width_report(3, 0.25)
    assert report["tier"] == "overflow"
    with pytest.raises(WidthOverflowError) as exc_info:
        theoretical_width(3, 0.25)
    assert exc_info.value.required_width_log10 == pytest.approx(
        report["total_width_log10"]
    )


def test_theoretical_width_report_never_raises():
    for eps in (0.9, 0.5, 0.25, 0.1, 0.05):
        report = theoretical_width_report(4, eps)
        assert report["total_width_log10"] > 0
        assert report["bernstein_degree"] == 2 * math.ceil(32 / eps**3)
        assert report["monomial_count"] == report["bernstein_degree"] // 2
        assert math.isfinite(report["total_width_log10"])


def test_monomial_width_exact_matches_plan_based():
    for d, k, eps in ((3, 1, 0.5), (3, 2, 0.5), (5, 2, 0.25)):
        for act in ("exp", "relu"):
            exact = _monomial_width_exact(d, k, Fraction(eps), act)
            plan_based = monomial_theoretical_width(d, k, eps, activation=act)
            assert exact == plan_based, (d, k, eps, act)


def test_report_rejects_bad_inputs():
    with pytest.raises(ValueError):
        theoretical_width_report(1, 0.5)
    with pytest.raises(ValueError):
        theoretical_width_report(3, 1.5)
