"""Unit tests for the ReLU substitution of exponential units."""

from __future__ import annotations

import math

import numpy as np
import pytest

from radialnet.activation import approx_univariate_relu, substitute_activation
from radialnet.expfeat import build_exp_network
from radialnet.network import DepthTwoNetwork, eval_network
from radialnet.sphere import SeededRng


def test_univariate_exp_certified():
    delta = 0.01
    approx = approx_univariate_relu(np.exp, 1.0, math.e, delta)
    assert approx.certified_delta <= delta
    grid = np.linspace(-1, 1, 5001)
    err = np.max(np.abs(approx.eval(grid) - np.exp(grid)))
    assert err <= delta
    # terms reconstruct eval
    manual = np.full_like(grid, approx.constant)
    for alpha, beta, gamma in approx.terms:
        manual += alpha * np.maximum(beta * grid - gamma, 0.0)
    assert np.max(np.abs(manual - approx.eval(grid))) < 1e-12


def test_univariate_width_scales_with_delta():
    wide = approx_univariate_relu(np.exp, 1.0, math.e, 0.001)
    narrow = approx_univariate_relu(np.exp, 1.0, math.e, 0.1)
    assert wide.width > narrow.width


def test_univariate_constant_outside_interval():
    approx = approx_univariate_relu(np.exp, 1.0, math.e, 0.05)
    left = approx.eval(np.array([-1.0, -1.5, -10.0]))
    assert np.allclose(left, left[0], atol=1e-12, rtol=0)


def test_substitute_activation_accuracy():
    exp_net, _ = build_exp_network(
        2, 0.5, SeededRng(17), verify_budget=8192, verify_restarts=2
    )
    delta = 0.05
    relu_net = substitute_activation(exp_net, delta)
    assert relu_net.activation == "relu"
    assert relu_net.width % exp_net.width == 0
    rng = np.random.default_rng(5)
    xs = rng.standard_normal((500, 2))
    norms = np.linalg.norm(xs, axis=1, keepdims=True)
    xs = xs / norms * rng.uniform(0, 1, size=(500, 1))
    gap = np.max(np.abs(eval_network(relu_net, xs) - eval_network(exp_net, xs)))
    assert gap <= delta
    assert relu_net.meta["substituted_from"] == "exp"
    assert relu_net.meta["substitution_delta"] == delta


def test_substitute_requires_exp_and_zero_bias():
    relu_net = DepthTwoNetwork(
        dim=1,
        activation="relu",
        weights=np.ones((1, 1)),
        biases=np.zeros(1),
        output_weights=np.ones(1),
        output_bias=0.0,
        meta={},
    )
    with pytest.raises(ValueError):
        substitute_activation(relu_net, 0.1)

    biased = DepthTwoNetwork(
        dim=1,
        activation="exp",
        weights=np.ones((1, 1)),
        biases=np.ones(1),
        output_weights=np.ones(1),
        output_bias=0.0,
        meta={},
    )
    with pytest.raises(ValueError):
        substitute_activation(biased, 0.1)
