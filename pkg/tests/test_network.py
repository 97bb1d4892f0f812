"""Unit tests for the depth-2 network container and its JSON codec."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from radialnet.network import (
    DepthTwoNetwork,
    eval_network,
    load_network,
    network_from_json_dict,
    network_to_json_dict,
    save_network,
)


def _toy_net(activation="relu", width=3, dim=2, seed=0):
    rng = np.random.default_rng(seed)
    return DepthTwoNetwork(
        dim=dim,
        activation=activation,
        weights=rng.standard_normal((width, dim)),
        biases=rng.standard_normal(width),
        output_weights=rng.standard_normal(width),
        output_bias=0.25,
        meta={"note": "toy"},
    )


def test_eval_relu_by_hand():
    net = DepthTwoNetwork(
        dim=2,
        activation="relu",
        weights=np.array([[1.0, 0.0], [0.0, -2.0]]),
        biases=np.array([0.0, 1.0]),
        output_weights=np.array([3.0, 1.0]),
        output_bias=-1.0,
        meta={},
    )
    x = np.array([0.5, 0.25])
    # units: relu(0.5) = 0.5, relu(-0.5 + 1) = 0.5 -> 3*0.5 + 0.5 - 1 = 1.0
    assert eval_network(net, x) == pytest.approx(1.0, abs=1e-15)


def test_eval_exp_by_hand():
    net = DepthTwoNetwork(
        dim=1,
        activation="exp",
        weights=np.array([[1.0]]),
        biases=np.array([0.0]),
        output_weights=np.array([2.0]),
        output_bias=0.0,
        meta={},
    )
    assert eval_network(net, np.array([0.3])) == pytest.approx(
        2.0 * math.exp(0.3), rel=1e-15
    )


def test_width_zero_network_is_constant():
    net = DepthTwoNetwork(
        dim=4,
        activation="relu",
        weights=np.zeros((0, 4)),
        biases=np.zeros(0),
        output_weights=np.zeros(0),
        output_bias=0.75,
        meta={},
    )
    assert net.width == 0
    assert eval_network(net, np.zeros(4)) == 0.75
    batch = eval_network(net, np.random.default_rng(1).standard_normal((10, 4)))
    assert np.array_equal(batch, np.full(10, 0.75))


def test_batch_matches_single():
    net = _toy_net(width=5, dim=3, seed=2)
    xs = np.random.default_rng(3).standard_normal((20, 3))
    batch = eval_network(net, xs)
    singles = np.array([eval_network(net, x) for x in xs])
    assert np.allclose(batch, singles, rtol=0, atol=1e-12)


def test_chunked_evaluation_consistent():
    # force chunking by exceeding the entry budget with a wide batch
    net = _toy_net(width=64, dim=8, seed=4)
    xs = np.random.default_rng(5).standard_normal((3000, 8))
    full = eval_network(net, xs)
    parts = np.concatenate([eval_network(net, xs[:1500]), eval_network(net, xs[1500:])])
    assert np.array_equal(full, parts)


def test_json_round_trip_value_exact(tmp_path):
    for activation in ("relu", "exp"):
        net = _toy_net(activation=activation, width=7, dim=3, seed=6)
        payload = network_to_json_dict(net)
        # serialize through actual text to exercise the float codec
        text = json.dumps(payload)
        back = network_from_json_dict(json.loads(text))
        assert back.dim == net.dim
        assert back.activation == net.activation
        assert np.array_equal(back.weights, net.weights)
        assert np.array_equal(back.biases, net.biases)
        assert np.array_equal(back.output_weights, net.output_weights)
        assert back.output_bias == net.output_bias
        xs = np.random.default_rng(7).standard_normal((11, 3))
        assert np.array_equal(eval_network(back, xs), eval_network(net, xs))

        path = tmp_path / f"net_{activation}.json"
        save_network(net, path)
        loaded = load_network(path)
        assert np.array_equal(eval_network(loaded, xs), eval_network(net, xs))
        raw = json.loads(path.read_text())
        assert set(raw) >= {"dim", "activation", "hidden", "v", "b0"}
        assert len(raw["hidden"]) == net.width


def test_rejects_bad_activation():
    with pytest.raises(ValueError):
        DepthTwoNetwork(
            dim=1,
            activation="tanh",
            weights=np.zeros((1, 1)),
            biases=np.zeros(1),
            output_weights=np.zeros(1),
            output_bias=0.0,
            meta={},
        )


def test_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        DepthTwoNetwork(
            dim=2,
            activation="relu",
            weights=np.zeros((3, 2)),
            biases=np.zeros(2),
            output_weights=np.zeros(3),
            output_bias=0.0,
            meta={},
        )
