"""Unit tests for the target profile zoo and the expression parser."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radialnet.profiles import (
    get_profile,
    profile_abs_half,
    profile_const,
    profile_fd,
    profile_from_expression,
    profile_linear,
    profile_monomial,
    profile_shifted,
    profile_square,
)
from radialnet.specialfn import fd_eval_closed


def test_zoo_values():
    assert profile_linear().eval(0.3) == 0.3
    assert profile_square().eval(0.5) == 0.25
    assert profile_abs_half().eval(0.25) == 0.25
    assert profile_abs_half().eval(0.75) == 0.25
    cos_prof = get_profile("cosine")
    assert cos_prof.eval(0.0) == pytest.approx(0.0)
    assert cos_prof.eval(1.0) == pytest.approx(2 / math.pi)
    assert profile_const(0.7).eval(0.123) == 0.7


def test_lipschitz_bounds_declared():
    for name in ("linear", "square", "abs_half", "cosine"):
        prof = get_profile(name)
        grid = np.linspace(0, 1, 400)
        vals = np.array([prof.eval(float(r)) for r in grid])
        slopes = np.abs(np.diff(vals)) / np.diff(grid)
        assert float(np.max(slopes)) <= prof.lipschitz_bound * (1 + 1e-6) + 1e-9


def test_monomial_profile():
    prof = profile_monomial(3)
    assert prof.eval(0.5) == 0.5**6
    assert get_profile("monomial:2").eval(0.9) == pytest.approx(0.9**4)


def test_fd_profile_matches_closed_eval():
    for d in (2, 3, 10):
        prof = profile_fd(d)
        for r in (0.0, 0.4, 1.0):
            assert prof.eval(r) == pytest.approx(fd_eval_closed(d, r), rel=1e-12)


def test_expression_profiles():
    prof = profile_from_expression("z**2 + 0.5")
    assert prof.eval(0.5) == pytest.approx(0.75)
    vec = prof.eval_vec(np.array([0.0, 1.0]))
    assert vec == pytest.approx([0.5, 1.5])
    trig = profile_from_expression("sin(z)/2")
    assert trig.eval(0.7) == pytest.approx(math.sin(0.7) / 2)


def test_expression_rejects_malicious():
    for bad in ("__import__('os')", "z.__class__", "open('x')", "lambda: 1"):
        with pytest.raises(ValueError):
            profile_from_expression(bad)


def test_shifted_profile():
    prof = profile_shifted(profile_linear(), -0.25)
    assert prof.eval(0.5) == pytest.approx(0.25)


def test_get_profile_const_form_and_expression_fallback():
    assert get_profile("const:0.25").eval(0.9) == 0.25
    assert get_profile("z**4").eval(0.5) == pytest.approx(0.0625)


def test_get_profile_fd_requires_dimension():
    prof = get_profile("fd", d=4)
    assert prof.eval(0.5) == pytest.approx(fd_eval_closed(4, 0.5), rel=1e-12)
    with pytest.raises(ValueError):
        get_profile("fd")
