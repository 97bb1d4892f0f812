"""End-to-end construction: 1-Lipschitz radial profile -> depth-2 network.

The pipeline factors through an even polynomial approximant of the profile
(:mod:`radialnet.bernstein`), then realizes that polynomial on the ball with
ridge functions.  Two realizations exist:

* ``tuned`` (the default) searches a small degree ladder for the cheapest
  even polynomial whose measured grid error fits in half the budget, then
  routes by shape:

  - *constant*: the polynomial has no nonconstant term; the network is a
    bare bias (width 0).
  - *per-monomial*: every surviving term has degree <= 6, so each monomial
    ``|x|^{2k}`` gets its own certified sub-network (see
    :mod:`radialnet.monomial`) and the results are concatenated with the
    polynomial's coefficients as output scales.
  - *combined-ridge* (d = 1 or d = 3): all terms are realized at once as a
    sphere average of a single univariate ridge function, evaluated over an
    exact product quadrature, each node carrying one shared piecewise-linear
    ReLU block.  The quadrature is *exact* for the polynomial integrand, so
    the only new error is the piecewise-linear substitution.

* ``theoretical`` follows the worst-case recipe verbatim: an even polynomial
  of degree ``2*ceil(32/eps^3)`` and one conservative monomial sub-network
  per term at accuracy ``eps / (degree * 2**degree)``.  The implied widths
  are astronomically large for every accuracy below 1, so building always
  fails with :class:`~radialnet.monomial.WidthOverflowError`; the width
  itself is still reported, exactly when representable and through its
  log10 otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np
from scipy.special import gammaln

from ._util import ceil_with_float_guard, derive_subseed
from .bernstein import EvenPolynomial, RadialProfile, even_poly_approx
from .monomial import (
    WidthOverflowError,
    _exp_subnet_width,
    _relu_subnet_width,
    build_monomial_network,
    eta_formula,
)
from .network import DepthTwoNetwork
from .quadrature import sphere_product_rule_s2
from .specialfn import alpha_coeff
from .sphere import SeededRng
from .verify import ErrorReport, estimate_sup_error

__all__ = [
    "DEGREE_LADDER",
    "PipelinePlan",
    "build_radial_network",
    "theoretical_width",
    "theoretical_width_report",
]

# Even-polynomial degrees tried, in order, by the tuned pipeline.
DEGREE_LADDER: tuple[int, ...] = (2, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128)

# Hidden-unit budget of a single build; theoretical widths always exceed it.
_BUILD_MAX_WIDTH = 500_000

# Tier thresholds for theoretical width accounting.
_EXACT_TIER_MAX_DEGREE = 128
_MAX_REPRESENTABLE_LOG10 = 5.0e7

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class PipelinePlan:
    """Everything decided while building a radial network.

    Attributes:
        profile_label: label of the approximated profile.
        d: ambient dimension.
        epsilon: total sup-norm budget.
        activation: "exp" or "relu".
        mode: "tuned" or "theoretical".
        even_poly: the exact even polynomial the network realizes.
        route: "constant", "per_monomial", or "ridge".
        monomial_accuracies: per-halfdegree sup budgets handed to monomial
            sub-builders (empty for the constant and ridge routes).
        component_widths: hidden-unit count per named component.
        total_width: sum of all component widths (the network's width).
        bernstein_grid_error: measured grid error of the even polynomial.
        coeff_abs_sum: sum of |p_{2k}| over the nonconstant terms.
        extras: route-specific diagnostics (floats/ints/strings only).
    """

    profile_label: str
    d: int
    epsilon: float
    activation: str
    mode: str
    even_poly: EvenPolynomial
    route: str
    monomial_accuracies: dict[int, float]
    component_widths: dict[str, int]
    total_width: int
    bernstein_grid_error: float
    coeff_abs_sum: float
    extras: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.route not in ("constant", "per_monomial", "ridge"):
            raise ValueError(f"unknown route {self.route!r}")
        if self.total_width != sum(self.component_widths.values()):
            raise ValueError("total_width must equal the sum of component widths")
        if self.bernstein_grid_error != self.even_poly.measured_error:
            raise ValueError("bernstein_grid_error must match the polynomial's record")

    def as_dict(self) -> dict[str, Any]:
        return {
            "profile_label": self.profile_label,
            "d": self.d,
            "epsilon": self.epsilon,
            "activation": self.activation,
            "mode": self.mode,
            "route": self.route,
            "even_poly": self.even_poly.as_dict(),
            "monomial_accuracies": {str(k): v for k, v in self.monomial_accuracies.items()},
            "component_widths": dict(self.component_widths),
            "total_width": self.total_width,
            "bernstein_grid_error": self.bernstein_grid_error,
            "coeff_abs_sum": self.coeff_abs_sum,
            "extras": dict(self.extras),
        }


# --------------------------------------------------------------------------
# tuned routes
# --------------------------------------------------------------------------


def _select_even_poly(profile: RadialProfile, epsilon: float) -> EvenPolynomial:
    """Smallest ladder degree whose measured grid error fits 0.98 * eps/2."""
    budget = 0.49 * epsilon
    best: Optional[EvenPolynomial] = None
    for degree in DEGREE_LADDER:
        poly = even_poly_approx(profile, epsilon, degree_override=degree)
        if best is None or poly.measured_error < best.measured_error:
            best = poly
        if poly.measured_error <= budget:
            return poly
    assert best is not None
    raise RuntimeError(
        f"no ladder degree reaches grid error {budget:.4g} for profile "
        f"{profile.label!r} (best {best.measured_error:.4g} at degree "
        f"{best.degree}); the profile is too rough for this accuracy"
    )


def _verify_or_fail(
    net: DepthTwoNetwork,
    profile: RadialProfile,
    epsilon: float,
    seed: int,
    budget: int,
    restarts: int,
) -> ErrorReport:
    net.meta["verify_seed"] = seed
    net.meta["verify_budget"] = budget
    net.meta["verify_restarts"] = restarts
    report = estimate_sup_error(
        net, profile, budget=budget, restarts=restarts, rng=SeededRng(seed)
    )
    net.meta["empirical_sup_error"] = report.sup_estimate
    if report.sup_estimate > epsilon:
        raise RuntimeError(
            f"pipeline build for {profile.label!r} missed its budget: "
            f"empirical sup error {report.sup_estimate:.4g} > {epsilon}"
        )
    return report


def _build_constant(
    profile: RadialProfile,
    d: int,
    epsilon: float,
    activation: str,
    poly: EvenPolynomial,
    seed: int,
    budget: int,
    restarts: int,
) -> tuple[DepthTwoNetwork, ErrorReport, PipelinePlan]:
    bias = float(poly.shift + poly.coeffs[0])
    net = DepthTwoNetwork(
        dim=d,
        activation=activation,
        weights=np.zeros((0, d)),
        biases=np.zeros(0),
        output_weights=np.zeros(0),
        output_bias=bias,
        meta={
            "builder": "pipeline",
            "route": "constant",
            "profile": profile.label,
            "d": d,
            "epsilon": epsilon,
            "activation": activation,
        },
    )
    report = _verify_or_fail(net, profile, epsilon, seed, budget, restarts)
    plan = PipelinePlan(
        profile_label=profile.label,
        d=d,
        epsilon=epsilon,
        activation=activation,
        mode="tuned",
        even_poly=poly,
        route="constant",
        monomial_accuracies={},
        component_widths={},
        total_width=0,
        bernstein_grid_error=poly.measured_error,
        coeff_abs_sum=0.0,
        extras={"output_bias": bias},
    )
    return net, report, plan


def _build_per_monomial(
    profile: RadialProfile,
    d: int,
    epsilon: float,
    activation: str,
    poly: EvenPolynomial,
    rng: SeededRng,
    budget: int,
    restarts: int,
    significant_ks: Optional[frozenset[int]] = None,
) -> tuple[DepthTwoNetwork, ErrorReport, PipelinePlan]:
    terms = [
        (k, c)
        for k, c in enumerate(poly.coeffs)
        if k >= 1 and c != 0 and (significant_ks is None or k in significant_ks)
    ]
    abs_sum = float(sum(abs(c) for _, c in terms))
    eps_mono = min(epsilon / (2.0 * abs_sum), 0.9)

    weight_blocks: list[np.ndarray] = []
    bias_blocks: list[np.ndarray] = []
    out_blocks: list[np.ndarray] = []
    output_bias = float(poly.shift + poly.coeffs[0])
    component_widths: dict[str, int] = {}
    accuracies: dict[int, float] = {}
    sub_meta: list[dict[str, Any]] = []
    for k, coeff in terms:
        sub_rng = SeededRng(derive_subseed(rng.seed, 10 + k))
        sub_net, sub_report, sub_plan = build_monomial_network(
            d,
            k,
            eps_mono,
            activation=activation,
            rng=sub_rng,
            mode="tuned",
            verify_budget=budget,
            verify_restarts=restarts,
        )
        scale = float(coeff)
        weight_blocks.append(sub_net.weights)
        bias_blocks.append(sub_net.biases)
        out_blocks.append(scale * sub_net.output_weights)
        output_bias += scale * sub_net.output_bias
        component_widths[f"monomial_{2 * k}"] = sub_net.width
        accuracies[k] = eps_mono
        sub_meta.append(
            {
                "halfdegree": k,
                "coefficient": scale,
                "width": sub_net.width,
                "eta": sub_net.meta.get("eta"),
                "empirical_sup_error": sub_report.sup_estimate,
            }
        )

    net = DepthTwoNetwork(
        dim=d,
        activation=activation,
        weights=np.concatenate(weight_blocks, axis=0),
        biases=np.concatenate(bias_blocks),
        output_weights=np.concatenate(out_blocks),
        output_bias=output_bias,
        meta={
            "builder": "pipeline",
            "route": "per_monomial",
            "profile": profile.label,
            "d": d,
            "epsilon": epsilon,
            "activation": activation,
            "bernstein_degree": poly.degree,
            "monomial_accuracy": eps_mono,
            "components": sub_meta,
        },
    )
    seed = derive_subseed(rng.seed, 999)
    report = _verify_or_fail(net, profile, epsilon, seed, budget, restarts)
    plan = PipelinePlan(
        profile_label=profile.label,
        d=d,
        epsilon=epsilon,
        activation=activation,
        mode="tuned",
        even_poly=poly,
        route="per_monomial",
        monomial_accuracies=accuracies,
        component_widths=component_widths,
        total_width=net.width,
        bernstein_grid_error=poly.measured_error,
        coeff_abs_sum=abs_sum,
        extras={"monomial_accuracy": eps_mono},
    )
    return net, report, plan


def _ridge_nodes(d: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Direction nodes and positive weights averaging ridge polynomials
    of the given degree exactly to the uniform sphere average."""
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([0.5, 0.5])
    if d == 3:
        return sphere_product_rule_s2(degree)
    raise RuntimeError(
        f"combined-ridge route supports d in {{1, 3}}, got d={d}; "
        "no exact moment-inverting ridge profile is implemented for this "
        "dimension (the per-monomial route covers polynomial degree <= 6)"
    )


def _build_ridge(
    profile: RadialProfile,
    d: int,
    epsilon: float,
    activation: str,
    poly: EvenPolynomial,
    rng: SeededRng,
    budget: int,
    restarts: int,
) -> tuple[DepthTwoNetwork, ErrorReport, PipelinePlan]:
    if activation != "relu":
        raise RuntimeError(
            "the combined-ridge route realizes a piecewise-linear ridge "
            "profile and therefore requires activation='relu'"
        )
    nodes, node_weights = _ridge_nodes(d, poly.degree)

    if d == 1:
        # averaging over +-1 reproduces the even polynomial exactly
        def ridge_profile(t: np.ndarray) -> np.ndarray:
            return poly.eval(t)

    else:
        # sphere moments scale t^{2k} by 1/(2k+1) in dimension 3; the
        # combination U(t) = p(t) + t p'(t) maps t^{2k} to (2k+1) t^{2k},
        # cancelling the factor, so the sphere average of U(<w, x>) equals
        # p(|x|) identically
        def ridge_profile(t: np.ndarray) -> np.ndarray:
            t = np.asarray(t, dtype=np.float64)
            return poly.eval(t) + t * poly.eval_deriv(t)

    # numeric Lipschitz and curvature bounds for the univariate block sizing
    grid = np.linspace(-1.0, 1.0, 8001)
    h = grid[1] - grid[0]
    vals = ridge_profile(grid)
    slopes = np.diff(vals) / h
    lip = float(np.max(np.abs(slopes))) * 1.05 + 1e-9
    curvature = float(np.max(np.abs(np.diff(vals, 2)))) / h**2 * 1.25 + 1e-9

    delta_u = 0.9 * (epsilon - poly.measured_error)
    if delta_u <= 0:
        raise RuntimeError("no budget left for the ridge substitution")
    segments = max(4, ceil_with_float_guard(math.sqrt(curvature / (2.0 * delta_u))))
    unit = None
    for _ in range(8):
        candidate = _pwl_with_segments(ridge_profile, lip, segments)
        if candidate.certified_delta <= delta_u:
            unit = candidate
            break
        segments *= 2
    if unit is None:
        raise RuntimeError(
            "piecewise-linear ridge block failed to certify its budget"
        )

    width = len(nodes) * unit.width
    weights = np.zeros((width, d))
    biases = np.zeros(width)
    out = np.zeros(width)
    row = 0
    for node, omega in zip(nodes, node_weights):
        for alpha, beta, gamma in unit.terms:
            weights[row] = beta * node
            biases[row] = -gamma
            out[row] = omega * alpha
            row += 1
    assert row == width
    output_bias = float(poly.shift) + unit.constant * float(np.sum(node_weights))

    net = DepthTwoNetwork(
        dim=d,
        activation="relu",
        weights=weights,
        biases=biases,
        output_weights=out,
        output_bias=output_bias,
        meta={
            "builder": "pipeline",
            "route": "ridge",
            "profile": profile.label,
            "d": d,
            "epsilon": epsilon,
            "activation": "relu",
            "bernstein_degree": poly.degree,
            "ridge_nodes": int(len(nodes)),
            "ridge_unit_width": unit.width,
            "ridge_delta": unit.certified_delta,
        },
    )
    seed = derive_subseed(rng.seed, 999)
    report = _verify_or_fail(net, profile, epsilon, seed, budget, restarts)
    plan = PipelinePlan(
        profile_label=profile.label,
        d=d,
        epsilon=epsilon,
        activation="relu",
        mode="tuned",
        even_poly=poly,
        route="ridge",
        monomial_accuracies={},
        component_widths={"ridge": width},
        total_width=width,
        bernstein_grid_error=poly.measured_error,
        coeff_abs_sum=float(sum(abs(c) for c in poly.coeffs[1:])),
        extras={
            "ridge_nodes": int(len(nodes)),
            "ridge_unit_width": unit.width,
            "ridge_delta_budget": delta_u,
            "ridge_delta_certified": unit.certified_delta,
            "ridge_lipschitz": lip,
            "ridge_curvature": curvature,
        },
    )
    return net, report, plan


def _pwl_with_segments(target, lip: float, segments: int):
    """Piecewise-linear block on [-1, 1] with an exact segment count.

    ``approx_univariate_relu`` derives its knot count as ceil(2 R L / delta);
    passing delta = 2 L / segments inverts that to the requested count.
    """
    from .activation import approx_univariate_relu

    return approx_univariate_relu(target, 1.0, lip, 2.0 * lip / segments)


# --------------------------------------------------------------------------
# theoretical width accounting
# --------------------------------------------------------------------------


def _bernstein_degree(epsilon: float) -> int:
    """Worst-case even-polynomial degree at accuracy eps/2: 2*ceil(32/eps^3)."""
    return 2 * ceil_with_float_guard(32.0 / epsilon**3)


def _log10_double_factorial(m: np.ndarray) -> np.ndarray:
    """Vectorized log10 of m!! (m >= -1; (-1)!! = 0!! = 1)."""
    m = np.asarray(m, dtype=np.int64)
    out = np.zeros(m.shape, dtype=np.float64)
    even = (m > 0) & (m % 2 == 0)
    odd = (m > 0) & (m % 2 == 1)
    if np.any(even):
        j = m[even] // 2
        out[even] = j * math.log10(2.0) + gammaln(j + 1.0) / _LN10
    if np.any(odd):
        j = (m[odd] - 1) // 2
        out[odd] = (gammaln(2 * j + 2.0) - gammaln(j + 1.0)) / _LN10 - j * math.log10(2.0)
    return out


def _log10_alpha(d: int, k: np.ndarray) -> np.ndarray:
    """Vectorized log10 of the series coefficients alpha_{2k}(d)."""
    k = np.asarray(k, dtype=np.int64)
    const = float(_log10_double_factorial(np.array([d - 2]))[0])
    return const - _log10_double_factorial(2 * k) - _log10_double_factorial(d + 2 * k - 2)


def _logsumexp10(values: np.ndarray) -> float:
    peak = float(np.max(values))
    return peak + math.log10(float(np.sum(np.power(10.0, values - peak))))


def theoretical_width_report(
    d: int, epsilon: float, activation: str = "relu"
) -> dict[str, Any]:
    """Width of the worst-case pipeline, reported through log10; never raises
    for valid arguments, no matter how astronomically large the result is.

    The chain: even polynomial of degree n = 2*ceil(32/eps^3) with exact
    coefficients bounded by 2^n, one monomial sub-network per halfdegree
    k <= n/2 at accuracy eps/(n 2^n), each realized with the conservative
    random-feature width ceil(36/delta^2) (per scale, delta the sub-network
    accuracy after coefficient amplification) and, for ReLU, the univariate
    substitution factor.  All arithmetic is done in log10, which loses only
    a negligible relative error (the six-digit truncation of each scale and
    the O(theta) node–gap factor) against the exact integer account.
    """
    if d < 2:
        raise ValueError(f"theoretical construction requires d >= 2, got d={d}")
    if not (0 < epsilon < 1):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if activation not in ("exp", "relu"):
        raise ValueError(f"unknown activation {activation!r}")

    n_b = _bernstein_degree(epsilon)
    m = n_b // 2
    log10_delta_mono = math.log10(epsilon) - math.log10(n_b) - n_b * math.log10(2.0)

    k = np.arange(1, m + 1, dtype=np.int64)
    # scale eta_k = min(1/2, 1/k, (delta/2)/(8e)); the third term dominates
    # whenever it is the smallest, which is always here except for huge eps
    log10_eta = np.minimum(
        np.minimum(-math.log10(2.0), -np.log10(k.astype(np.float64))),
        log10_delta_mono - math.log10(2.0) - math.log10(8.0 * math.e),
    )
    log10_theta = 2.0 * log10_eta
    # largest plan coefficient sits at the deepest scale: |b_k| =
    # alpha_{2k}^{-1} theta^{-(k^2+k)/2} / G with G = 1 - O(theta)
    log10_maxb = -_log10_alpha(d, k) - (k * (k + 1) / 2.0) * log10_theta
    log10_delta_sub = (
        log10_delta_mono - math.log10(2.0) - np.log10(k.astype(np.float64)) - log10_maxb
    )
    if activation == "exp":
        log10_w = np.log10(k.astype(np.float64)) + math.log10(36.0) - 2.0 * log10_delta_sub
    else:
        log10_w = (
            np.log10(k.astype(np.float64))
            + math.log10(144.0)
            - 2.0 * log10_delta_sub
            + math.log10(4.0 * math.e)
            - log10_delta_sub
        )
    total_log10 = _logsumexp10(log10_w)
    dominant = int(k[int(np.argmax(log10_w))])

    if n_b <= _EXACT_TIER_MAX_DEGREE:
        tier = "exact"
    elif total_log10 <= _MAX_REPRESENTABLE_LOG10:
        tier = "power_of_ten"
    else:
        tier = "overflow"
    return {
        "d": d,
        "epsilon": epsilon,
        "activation": activation,
        "bernstein_degree": n_b,
        "monomial_count": m,
        "per_monomial_accuracy_log10": log10_delta_mono,
        "total_width_log10": total_log10,
        "dominant_halfdegree": dominant,
        "dominant_width_log10": float(np.max(log10_w)),
        "tier": tier,
    }


def _monomial_width_exact(
    d: int, k: int, eps_target: Fraction, activation: str
) -> int:
    """Exact conservative width of one monomial sub-network.

    Uses the closed form for the largest plan coefficient: with theta <= 1/4
    (always true, the scale formula caps eta at 1/2) the coefficient
    magnitudes grow strictly along the scale ladder — consecutive ratios are
    at least theta^{-1} * (1 - theta/(1-theta)) >= 8/3 — so the maximum is
    the last one, computable from its product formula without solving the
    full system.
    """
    eta = eta_formula(k, eps_target / 2)
    theta = eta * eta
    xs = [theta**j for j in range(1, k + 1)]
    prod = Fraction(1)
    for m_idx in range(k - 1):
        prod *= xs[k - 1] - xs[m_idx]
    maxb = 1 / (alpha_coeff(d, k) * xs[k - 1] * abs(prod))
    delta = eps_target / (2 * k * maxb)
    if activation == "exp":
        per_scale = _exp_subnet_width(delta)
    else:
        per_scale = _relu_subnet_width(delta)
    return k * per_scale


def theoretical_width(d: int, epsilon: float, activation: str = "relu") -> int:
    """Hidden-unit count of the worst-case pipeline, as a Python integer.

    Three regimes, chosen by feasibility of the integer itself:

    * polynomial degree <= 128 (epsilon above roughly 0.79): the exact
      integer, computed in rational arithmetic (its decimal expansion runs
      to ~10^5 digits at epsilon = 0.9 — large, but materializable);
    * log10(width) <= 5e7: the power of ten 10**floor(log10(width)),
      an explicit integer of the right magnitude (the exact value would
      require solving linear systems with >10^7-digit entries);
    * beyond that the integer literally cannot be written down in this
      universe of RAM: raises :class:`WidthOverflowError` carrying
      ``required_width_log10``.
    """
    report = theoretical_width_report(d, epsilon, activation)
    n_b = report["bernstein_degree"]
    if report["tier"] == "exact":
        delta_mono = Fraction(epsilon) / (n_b * 2**n_b)
        return sum(
            _monomial_width_exact(d, k, delta_mono, activation)
            for k in range(1, n_b // 2 + 1)
        )
    if report["tier"] == "power_of_ten":
        return 10 ** int(math.floor(report["total_width_log10"]))
    raise WidthOverflowError(
        f"theoretical pipeline width for d={d}, eps={epsilon} is "
        f"~10^{report['total_width_log10']:.4g} units; the integer itself "
        "is too large to materialize",
        required_width=None,
        required_width_log10=report["total_width_log10"],
    )


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def build_radial_network(
    profile: RadialProfile,
    d: int,
    epsilon: float,
    activation: str = "relu",
    rng: Optional[SeededRng] = None,
    mode: str = "tuned",
    *,
    verify_budget: int = 100_000,
    verify_restarts: int = 10,
) -> tuple[DepthTwoNetwork, ErrorReport, PipelinePlan]:
    """Depth-2 network approximating ``profile(|x|)`` on the unit ball.

    Returns ``(network, error_report, plan)``; the report's ``sup_estimate``
    is guaranteed (by construction *and* by the final empirical check) to be
    at most ``epsilon``, else the builder raises.

    ``mode='theoretical'`` never returns: the worst-case widths exceed any
    sane budget for epsilon < 1, so it raises
    :class:`~radialnet.monomial.WidthOverflowError` carrying the required
    width (exactly, or through its log10 when the integer is too large to
    exist in memory).
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if not (0 < epsilon < 1):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if activation not in ("exp", "relu"):
        raise ValueError(f"unknown activation {activation!r}")
    if mode not in ("tuned", "theoretical"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng if rng is not None else SeededRng(0)

    if mode == "theoretical":
        try:
            required = theoretical_width(d, epsilon, activation)
        except WidthOverflowError as exc:
            raise WidthOverflowError(
                f"theoretical build for {profile.label!r} (d={d}, "
                f"eps={epsilon}) needs ~10^{exc.required_width_log10:.4g} "
                f"hidden units, far beyond the {_BUILD_MAX_WIDTH}-unit budget",
                required_width=None,
                required_width_log10=exc.required_width_log10,
                max_width=_BUILD_MAX_WIDTH,
            ) from exc
        report = theoretical_width_report(d, epsilon, activation)
        raise WidthOverflowError(
            f"theoretical build for {profile.label!r} (d={d}, eps={epsilon}) "
            f"needs ~10^{report['total_width_log10']:.4g} hidden units, "
            f"beyond the {_BUILD_MAX_WIDTH}-unit budget",
            required_width=required,
            required_width_log10=report["total_width_log10"],
            max_width=_BUILD_MAX_WIDTH,
        )

    poly = _select_even_poly(profile, epsilon)
    nonzero = [kk for kk, c in enumerate(poly.coeffs) if kk >= 1 and c != 0]

    # The de Casteljau coefficients come from float samples of the profile,
    # so mathematically-zero monomial coefficients usually surface as ~1e-16
    # dyadic crumbs.  Route on the significant terms only: the total dropped
    # mass is capped at 0.005 * epsilon, which the per-monomial error budget
    # absorbs, and the final empirical check still enforces epsilon.
    crumb_threshold = (0.005 * epsilon) / max(1, len(nonzero))
    significant = [
        kk for kk in nonzero if abs(float(poly.coeffs[kk])) > crumb_threshold
    ]

    if not significant:
        return _build_constant(
            profile,
            d,
            epsilon,
            activation,
            poly,
            derive_subseed(rng.seed, 999),
            verify_budget,
            verify_restarts,
        )
    if d >= 2 and max(significant) <= 3:
        return _build_per_monomial(
            profile,
            d,
            epsilon,
            activation,
            poly,
            rng,
            verify_budget,
            verify_restarts,
            significant_ks=frozenset(significant),
        )
    if d in (1, 3):
        return _build_ridge(
            profile, d, epsilon, activation, poly, rng, verify_budget, verify_restarts
        )
    raise RuntimeError(
        f"no tuned route for profile {profile.label!r} in dimension {d}: "
        f"the even polynomial needs degree {2 * max(significant)} > 6 and the "
        "exact combined-ridge quadrature is implemented for d in {1, 3} only"
    )
