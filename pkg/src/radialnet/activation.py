"""Univariate depth-2 approximation and exponential->ReLU substitution.

A ReLU combination ``h(x) = a + sum_i alpha_i * relu(beta_i * x - gamma_i)``
can represent any piecewise-linear function that is constant outside a bounded
interval.  This module builds such combinations by interpolating a Lipschitz
target at uniform knots, and uses them to replace every exponential unit of a
depth-2 network by a block of ReLU units computing a certified approximation
of ``t -> exp(t)`` on ``[-1, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from ._util import ceil_with_float_guard
from .network import DepthTwoNetwork

__all__ = [
    "UnivariateApprox",
    "approx_univariate_relu",
    "substitute_activation",
]


def _sample(target: Callable[[float], float], xs: np.ndarray) -> np.ndarray:
    """Evaluate ``target`` on ``xs``, accepting scalar-only callables."""
    try:
        out = np.asarray(target(xs), dtype=np.float64)
        if out.shape == xs.shape:
            return out
    except Exception:
        pass
    return np.array([float(target(float(x))) for x in xs], dtype=np.float64)


@dataclass(frozen=True)
class UnivariateApprox:
    """Depth-2 univariate combination ``h(x) = a + sum alpha*sigma(beta*x - gamma)``.

    ``knots``/``values`` hold the underlying piecewise-linear interpolant
    (constant outside ``[-R, R]``); ``certified_delta`` is the measured
    dense-grid error against the construction target.
    """

    constant: float
    terms: tuple[tuple[float, float, float], ...]  # (alpha, beta, gamma)
    activation: str
    certified_delta: float
    interval: tuple[float, float]
    knots: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.activation != "relu":
            raise ValueError(f"unsupported activation {self.activation!r}")
        if not math.isfinite(self.constant):
            raise ValueError("constant term must be finite")
        for alpha, beta, gamma in self.terms:
            if not (math.isfinite(alpha) and math.isfinite(beta) and math.isfinite(gamma)):
                raise ValueError("non-finite term coefficients")

    @property
    def width(self) -> int:
        return len(self.terms)

    def eval(self, x: "np.ndarray | float") -> "np.ndarray | float":
        """Evaluate the ReLU-combination form."""
        arr = np.asarray(x, dtype=np.float64)
        out = np.full(arr.shape, self.constant, dtype=np.float64)
        for alpha, beta, gamma in self.terms:
            out += alpha * np.maximum(0.0, beta * arr - gamma)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def eval_pwl(self, x: "np.ndarray | float") -> "np.ndarray | float":
        """Evaluate the piecewise-linear interpolant directly (oracle form)."""
        out = np.interp(np.asarray(x, dtype=np.float64), self.knots, self.values)
        if np.ndim(x) == 0:
            return float(out)
        return out


def approx_univariate_relu(
    target: Callable[[float], float],
    R: float,
    L: float,
    delta: float,
    *,
    grid_points: int = 10_001,
) -> UnivariateApprox:
    """Piecewise-linear ReLU approximation of an ``L``-Lipschitz target.

    Interpolates ``target`` at uniformly spaced knots on ``[-R, R]`` with
    spacing ``h <= delta / L`` (so the Lipschitz interpolation bound gives
    error <= ``delta``), extends the interpolant constant outside the
    interval, and expresses it as ``f(-R) + sum_j c_j * relu(x - x_j)`` —
    one unit per interior slope change plus one clamping unit at each end of
    the rightmost segment.  Width is at most ``ceil(2*R*L/delta) + 2``.

    ``certified_delta`` records the measured maximum error on a dense grid;
    for targets with bounded curvature it is usually far below ``delta``.
    """
    if not (R > 0 and math.isfinite(R)):
        raise ValueError(f"R must be positive and finite, got {R}")
    if not (L >= 0 and math.isfinite(L)):
        raise ValueError(f"L must be nonnegative and finite, got {L}")
    if not (delta > 0 and math.isfinite(delta)):
        raise ValueError(f"delta must be positive and finite, got {delta}")
    segments = max(1, ceil_with_float_guard(2.0 * R * L / delta))
    knots = np.linspace(-R, R, segments + 1)
    values = _sample(target, knots)
    if not np.all(np.isfinite(values)):
        raise ValueError("target produced non-finite samples on the knot grid")

    h = knots[1] - knots[0]
    slopes = np.diff(values) / h
    terms: list[tuple[float, float, float]] = []
    prev = 0.0
    for j, s in enumerate(slopes):
        terms.append((float(s - prev), 1.0, float(knots[j])))
        prev = float(s)
    # clamp to a constant beyond the right endpoint
    terms.append((float(-prev), 1.0, float(knots[-1])))

    approx = UnivariateApprox(
        constant=float(values[0]),
        terms=tuple(terms),
        activation="relu",
        certified_delta=float("nan"),
        interval=(-float(R), float(R)),
        knots=knots,
        values=values,
    )
    grid = np.linspace(-R, R, grid_points)
    measured = float(np.max(np.abs(approx.eval_pwl(grid) - _sample(target, grid))))
    if not math.isfinite(measured):
        raise ValueError("target produced non-finite samples on the measurement grid")
    object.__setattr__(approx, "certified_delta", measured)
    return approx


def substitute_activation(
    exp_net: DepthTwoNetwork, delta: float
) -> DepthTwoNetwork:
    """Replace every exponential unit of ``exp_net`` by a certified ReLU block.

    Requires hidden weights of norm <= 1 and zero hidden biases, so each unit
    input ``<w_i, x>`` stays in ``[-1, 1]`` on the unit ball.  One shared
    univariate ReLU approximation of ``exp`` on ``[-1, 1]`` with per-unit
    accuracy ``delta / sum_i |v_i|`` is substituted into every unit; its inner
    affine maps are absorbed into the first layer.  The result differs from
    ``exp_net`` by at most ``delta`` everywhere on the ball, and its width is
    exactly ``exp_net.width`` times the univariate block width.
    """
    if exp_net.activation != "exp":
        raise ValueError("substitute_activation expects an exponential network")
    if not (delta > 0 and math.isfinite(delta)):
        raise ValueError(f"delta must be positive and finite, got {delta}")
    norms = np.sqrt(np.sum(exp_net.weights * exp_net.weights, axis=1))
    if norms.size and float(np.max(norms)) > 1.0 + 1e-9:
        raise ValueError(
            "hidden weight norms must be <= 1 so unit inputs stay in [-1, 1]"
        )
    if exp_net.biases.size and float(np.max(np.abs(exp_net.biases))) > 0.0:
        raise ValueError("hidden biases must be zero")

    total_out = float(np.sum(np.abs(exp_net.output_weights)))
    delta_unit = delta / total_out if total_out > 0 else delta
    unit = approx_univariate_relu(np.exp, 1.0, math.e, delta_unit)

    n = exp_net.width
    w_unit = unit.width
    d = exp_net.dim
    new_weights = np.zeros((n * w_unit, d))
    new_biases = np.zeros(n * w_unit)
    new_out = np.zeros(n * w_unit)
    row = 0
    for i in range(n):
        w_i = exp_net.weights[i]
        v_i = exp_net.output_weights[i]
        for alpha, beta, gamma in unit.terms:
            new_weights[row] = beta * w_i
            new_biases[row] = -gamma
            new_out[row] = v_i * alpha
            row += 1
    new_bias0 = float(exp_net.output_bias) + unit.constant * float(
        np.sum(exp_net.output_weights)
    )

    meta = dict(exp_net.meta)
    meta.update(
        {
            "substituted_from": "exp",
            "substitution_delta": delta,
            "substitution_delta_per_unit": delta_unit,
            "univariate_width": w_unit,
            "univariate_certified_delta": unit.certified_delta,
        }
    )
    return DepthTwoNetwork(
        dim=d,
        activation="relu",
        weights=new_weights,
        biases=new_biases,
        output_weights=new_out,
        output_bias=new_bias0,
        meta=meta,
    )
