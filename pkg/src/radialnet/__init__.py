"""radialnet: shallow networks approximating radial functions on the unit ball.

The package builds explicit depth-2 networks (exponential or ReLU
activations) whose outputs approximate ``phi(|x|)`` for 1-Lipschitz radial
targets, and ships an independent randomized harness for estimating the sup
error of any such network.  Everything is deterministic given a seed, and
every construction double-checks itself: exact rational linear algebra where
the math is exact, empirical verification where it is not.
"""

from __future__ import annotations

__version__ = "0.1.0"

from ._util import derive_subseed, splitmix64
from .activation import UnivariateApprox, approx_univariate_relu, substitute_activation
from .bernstein import (
    BernsteinPoly,
    EvenPolynomial,
    RadialProfile,
    even_poly_approx,
)
from .expfeat import (
    ExpFeatureBuildError,
    ExpFeatureCertificate,
    build_exp_network,
    exp_feature_width,
)
from .fourier import (
    FourierReport,
    SmoothedProfile,
    build_fourier_network,
    mollify,
    radial_fourier,
    v_moment,
)
from .monomial import (
    DirectionDesign,
    MonomialPlan,
    WidthOverflowError,
    build_monomial_network,
    eta_formula,
    monomial_theoretical_width,
    solve_monomial_plan,
    weighted_direction_design,
)
from .network import (
    DepthTwoNetwork,
    eval_network,
    load_network,
    network_from_json_dict,
    network_to_json_dict,
    save_network,
)
from .pipeline import (
    PipelinePlan,
    build_radial_network,
    theoretical_width,
    theoretical_width_report,
)
from .profiles import get_profile, profile_fd
from .quadrature import direction_design, sphere_product_rule_s2
from .specialfn import (
    FdCoefficients,
    a_n_closed,
    a_n_sum,
    alpha_coeff,
    fd_eval_closed,
    fd_eval_series,
)
from .sphere import SeededRng, beta_law_check, ks_statistic, sample_unit_sphere
from .verify import ErrorReport, estimate_l2_error, estimate_sup_error

__all__ = [
    "__version__",
    "BernsteinPoly",
    "DepthTwoNetwork",
    "DirectionDesign",
    "ErrorReport",
    "EvenPolynomial",
    "ExpFeatureBuildError",
    "ExpFeatureCertificate",
    "FdCoefficients",
    "FourierReport",
    "MonomialPlan",
    "PipelinePlan",
    "RadialProfile",
    "SeededRng",
    "SmoothedProfile",
    "UnivariateApprox",
    "WidthOverflowError",
    "a_n_closed",
    "a_n_sum",
    "alpha_coeff",
    "approx_univariate_relu",
    "beta_law_check",
    "build_exp_network",
    "build_fourier_network",
    "build_monomial_network",
    "build_radial_network",
    "derive_subseed",
    "direction_design",
    "estimate_l2_error",
    "estimate_sup_error",
    "eta_formula",
    "eval_network",
    "even_poly_approx",
    "exp_feature_width",
    "fd_eval_closed",
    "fd_eval_series",
    "get_profile",
    "ks_statistic",
    "load_network",
    "mollify",
    "monomial_theoretical_width",
    "network_from_json_dict",
    "network_to_json_dict",
    "profile_fd",
    "radial_fourier",
    "sample_unit_sphere",
    "save_network",
    "solve_monomial_plan",
    "sphere_product_rule_s2",
    "splitmix64",
    "substitute_activation",
    "theoretical_width",
    "theoretical_width_report",
    "v_moment",
    "weighted_direction_design",
]
