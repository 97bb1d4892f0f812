"""Depth-2 network container, chunked evaluation, and value-exact JSON I/O.

A network here is always the same shape: one hidden layer of ``width`` units
with an elementwise activation (``"exp"`` or ``"relu"``), then an affine
output:

    N(x) = output_bias + sum_i output_weights[i] * act(<weights[i], x> + biases[i])

Evaluation of a batch is a single GEMM; very wide networks are evaluated in
row chunks so the hidden activation matrix never exceeds a fixed memory
budget.  Serialization uses shortest round-trip float representations, so a
save/load cycle reproduces the identical IEEE-754 doubles, and re-running any
seeded verification on the loaded network gives bit-identical results.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from ._util import atomic_write_text, canonical_json

__all__ = [
    "ACTIVATIONS",
    "DepthTwoNetwork",
    "eval_network",
    "network_to_json_dict",
    "network_from_json_dict",
    "save_network",
    "load_network",
]

ACTIVATIONS = ("exp", "relu")

# Cap on entries of the hidden activation matrix per evaluation chunk
# (~128 MB of float64).  Width-130k networks on 1e5 points stay inside RAM.
_MAX_CHUNK_ENTRIES = 16_000_000

_ACT_FUNCS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exp": np.exp,
    "relu": lambda z: np.maximum(z, 0.0),
}


@dataclass
class DepthTwoNetwork:
    """Explicit depth-2 network with one hidden layer.

    Attributes:
        dim: input dimension d.
        activation: "exp" or "relu".
        weights: hidden-layer weight matrix, shape (width, dim).
        biases: hidden-layer biases, shape (width,).
        output_weights: linear output coefficients, shape (width,).
        output_bias: scalar affine offset of the output.
        meta: free-form provenance (builder name, parameters, seed); carried
            through serialization but irrelevant to evaluation.
    """

    dim: int
    activation: str
    weights: np.ndarray
    biases: np.ndarray
    output_weights: np.ndarray
    output_bias: float
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}")
        self.weights = np.atleast_2d(np.asarray(self.weights, dtype=np.float64))
        self.biases = np.asarray(self.biases, dtype=np.float64).reshape(-1)
        self.output_weights = np.asarray(self.output_weights, dtype=np.float64).reshape(-1)
        self.output_bias = float(self.output_bias)
        width = self.weights.shape[0]
        if self.weights.shape != (width, self.dim) and width > 0:
            raise ValueError(
                f"weights shape {self.weights.shape} inconsistent with dim={self.dim}"
            )
        if width == 0:
            self.weights = self.weights.reshape(0, self.dim)
        if self.biases.shape != (width,) or self.output_weights.shape != (width,):
            raise ValueError("biases and output_weights must both have length = width")
        for name, arr in (
            ("weights", self.weights),
            ("biases", self.biases),
            ("output_weights", self.output_weights),
        ):
            if arr.size and not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite values in {name}")
        if not np.isfinite(self.output_bias):
            raise ValueError("non-finite output_bias")

    @property
    def width(self) -> int:
        return self.weights.shape[0]

    def __call__(self, x: np.ndarray) -> float | np.ndarray:
        return eval_network(self, x)


def eval_network(net: DepthTwoNetwork, x: np.ndarray) -> float | np.ndarray:
    """Evaluate the network at one point (shape (d,)) or a batch (shape (n, d)).

    Returns a scalar for a single point, a shape-(n,) array for a batch.  The
    arithmetic path (GEMM over full rows, activation, dot with the output
    weights) is identical for both, so a point evaluated alone or inside a
    batch of any size yields the same double.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != net.dim:
        raise ValueError(f"input must have shape (n, {net.dim}) or ({net.dim},), got {x.shape}")
    act = _ACT_FUNCS[net.activation]
    n = x.shape[0]
    if net.width == 0:
        out = np.full(n, net.output_bias, dtype=np.float64)
        return float(out[0]) if single else out
    chunk = max(1, _MAX_CHUNK_ENTRIES // max(1, net.width))
    out = np.empty(n, dtype=np.float64)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        hidden = act(x[start:stop] @ net.weights.T + net.biases)
        out[start:stop] = hidden @ net.output_weights + net.output_bias
    return float(out[0]) if single else out


def network_to_json_dict(net: DepthTwoNetwork) -> dict[str, Any]:
    """JSON-ready dict; float values are native Python floats (value-exact)."""
    return {
        "dim": net.dim,
        "activation": net.activation,
        "hidden": [
            {"w": w_row.tolist(), "b": float(b)}
            for w_row, b in zip(net.weights, net.biases)
        ],
        "v": net.output_weights.tolist(),
        "b0": net.output_bias,
        "meta": net.meta,
    }


def network_from_json_dict(payload: dict[str, Any]) -> DepthTwoNetwork:
    hidden = payload["hidden"]
    dim = int(payload["dim"])
    weights = np.array([unit["w"] for unit in hidden], dtype=np.float64).reshape(len(hidden), dim)
    biases = np.array([unit["b"] for unit in hidden], dtype=np.float64)
    return DepthTwoNetwork(
        dim=dim,
        activation=payload["activation"],
        weights=weights,
        biases=biases,
        output_weights=np.asarray(payload["v"], dtype=np.float64),
        output_bias=float(payload["b0"]),
        meta=dict(payload.get("meta", {})),
    )


def save_network(net: DepthTwoNetwork, path: str | os.PathLike[str]) -> None:
    atomic_write_text(path, canonical_json(network_to_json_dict(net)))


def load_network(path: str | os.PathLike[str]) -> DepthTwoNetwork:
    with open(path, "r") as handle:
        return network_from_json_dict(json.load(handle))
