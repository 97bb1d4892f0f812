"""Unit tests for seeded randomness, sphere sampling, and the projection law."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import special as sp_special
from scipy import stats as sp_stats

from radialnet.specialfn import alpha_coeff
from radialnet.sphere import (
    SeededRng,
    beta_law_check,
    ks_statistic,
    regularized_incomplete_beta,
    sample_unit_sphere,
)


def test_seeded_rng_deterministic():
    a = SeededRng(42).standard_normal(16)
    b = SeededRng(42).standard_normal(16)
    assert np.array_equal(a, b)
    c = SeededRng(43).standard_normal(16)
    assert not np.array_equal(a, c)


def test_seeded_rng_spawn_independent():
    base = SeededRng(7)
    s0 = base.spawn(0)
    s1 = base.spawn(1)
    assert s0.seed != s1.seed
    assert not np.array_equal(s0.standard_normal(8), s1.standard_normal(8))
    # respawning gives the same child stream
    again = SeededRng(7).spawn(1)
    assert np.array_equal(again.standard_normal(8), SeededRng(s1.seed).standard_normal(8))


def test_sample_unit_sphere_norms_and_shape():
    rng = SeededRng(11)
    w = sample_unit_sphere(6, rng, 500)
    assert w.shape == (500, 6)
    norms = np.linalg.norm(w, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12
    single = sample_unit_sphere(4, SeededRng(3))
    assert single.shape == (4,)
    assert abs(np.linalg.norm(single) - 1.0) < 1e-12


def test_sphere_mean_near_zero():
    w = sample_unit_sphere(3, SeededRng(123), 20000)
    assert np.linalg.norm(w.mean(axis=0)) < 0.02


def test_sphere_even_moment_matches_alpha():
    # E <w, u>^{2k} = alpha_{2k}(d) * (2k)!  (u any unit vector)
    d, k, n = 5, 2, 400_000
    w = sample_unit_sphere(d, SeededRng(2024), n)
    proj = w[:, 0]
    emp = float(np.mean(proj ** (2 * k)))
    exact = float(alpha_coeff(d, k) * math.factorial(2 * k))
    se = float(np.std(proj ** (2 * k)) / math.sqrt(n))
    assert abs(emp - exact) < 5 * se + 1e-6


def test_regularized_incomplete_beta_vs_scipy():
    for a, b in [(0.5, 0.5), (1.0, 3.0), (4.5, 4.5), (24.5, 24.5)]:
        for x in np.linspace(0.0, 1.0, 23):
            ours = regularized_incomplete_beta(a, b, float(x))
            ref = float(sp_special.betainc(a, b, float(x)))
            assert ours == pytest.approx(ref, abs=1e-12)


def test_ks_statistic_matches_scipy():
    rng = SeededRng(5)
    samples = np.sort(rng.random(size=400))
    # uniform law: CDF(u) = u on sorted samples
    ours = ks_statistic(samples)
    ref = sp_stats.kstest(samples, "uniform").statistic
    assert ours == pytest.approx(float(ref), abs=1e-12)


def test_beta_law_check_small_dims():
    x = np.zeros(3)
    x[0] = 1.0
    ks = beta_law_check(3, x, 2000, SeededRng(99))
    # alpha = 0.01 threshold for n = 2000
    assert ks <= 1.6276 / math.sqrt(2000)


def test_beta_law_check_rejects_d1():
    with pytest.raises(ValueError):
        beta_law_check(1, np.ones(1), 100, SeededRng(0))
