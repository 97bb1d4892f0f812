"""Unit tests for the random exponential-feature builder."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radialnet.expfeat import (
    ExpFeatureCertificate,
    build_exp_network,
    exp_feature_width,
)
from radialnet.network import eval_network
from radialnet.profiles import profile_fd
from radialnet.sphere import SeededRng


def test_width_formula():
    assert exp_feature_width(0.1) == 3600
    assert exp_feature_width(0.4) == 225
    assert exp_feature_width(0.2) == 900
    assert exp_feature_width(0.05) == 14400
    assert exp_feature_width(1.0) == 36


def test_build_basic_structure():
    net, cert = build_exp_network(
        3, 0.4, SeededRng(100), verify_budget=20_000, verify_restarts=4
    )
    assert net.activation == "exp"
    assert net.width == 225
    assert cert.width == 225
    assert np.all(net.biases == 0)
    norms = np.linalg.norm(net.weights, axis=1)
    assert np.max(np.abs(norms - 1)) < 1e-12
    assert np.allclose(net.output_weights, 1 / 225, rtol=0, atol=0)
    assert net.output_bias == 0
    assert cert.empirical_sup_error <= 0.4


def test_network_tracks_target_function():
    net, _ = build_exp_network(
        2, 0.4, SeededRng(200), verify_budget=20_000, verify_restarts=4
    )
    prof = profile_fd(2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = rng.standard_normal(2)
        x = x / np.linalg.norm(x) * rng.uniform(0, 1)
        assert abs(eval_network(net, x) - prof.eval(float(np.linalg.norm(x)))) <= 0.4


def test_build_deterministic():
    a, cert_a = build_exp_network(
        3, 0.5, SeededRng(31), verify_budget=8192, verify_restarts=2
    )
    b, cert_b = build_exp_network(
        3, 0.5, SeededRng(31), verify_budget=8192, verify_restarts=2
    )
    assert np.array_equal(a.weights, b.weights)
    assert cert_a.empirical_sup_error == cert_b.empirical_sup_error
    assert cert_a.retries_used == cert_b.retries_used


def test_certificate_invariant_enforced():
    with pytest.raises(ValueError):
        ExpFeatureCertificate(
            width=36,
            epsilon_target=0.1,
            empirical_sup_error=0.2,
            retries_used=0,
            seed=0,
            verify_budget=1000,
            verify_restarts=1,
            verify_seed=0,
            weight_seed=0,
        )


def test_meta_records_build():
    net, cert = build_exp_network(
        2, 0.5, SeededRng(7), verify_budget=8192, verify_restarts=2
    )
    assert net.meta["builder"] == "exp_feature"
    assert net.meta["epsilon"] == 0.5
    assert net.meta["seed"] == 7
