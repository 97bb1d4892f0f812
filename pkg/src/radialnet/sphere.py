"""Deterministic sphere sampling and the one-coordinate projection law.

Everything random in this package flows through :class:`SeededRng`, a thin
wrapper over NumPy's PCG64 generator that (a) records its integer seed so any
result can be reproduced from its report, and (b) derives independent child
streams with :meth:`SeededRng.spawn` via a SplitMix64 hash of (seed, index) —
stable across runs, platforms, and process counts.

The statistical content: for a uniform unit vector W in R^d and any fixed
x != 0, the scaled projection <W, x/|x|> has the symmetric Beta law
Beta((d-1)/2, (d-1)/2) after the affine map t -> (t+1)/2.  ``beta_law_check``
measures the Kolmogorov-Smirnov distance of empirical projections from that
law, using an in-package regularized incomplete beta (continued fraction with
modified Lentz evaluation) so the check does not certify SciPy with SciPy.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ._util import derive_subseed

__all__ = [
    "SeededRng",
    "sample_unit_sphere",
    "regularized_incomplete_beta",
    "beta_law_check",
    "ks_statistic",
]


class SeededRng:
    """Seed-tracking wrapper around ``numpy.random.Generator(PCG64(seed))``.

    The same seed yields the same sample stream on every platform (PCG64 is
    fully specified, independent of OS or word size).  Children created by
    :meth:`spawn` depend only on (seed, index), never on draw order, so
    parallel and serial sweeps see identical streams.
    """

    ALGORITHM = "numpy.random.PCG64"

    def __init__(self, seed: int):
        if not isinstance(seed, (int, np.integer)):
            raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
        self.seed = int(seed) & ((1 << 64) - 1)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def spawn(self, worker_index: int) -> "SeededRng":
        """Independent child stream determined by (this seed, worker_index)."""
        return SeededRng(derive_subseed(self.seed, worker_index))

    # Light delegation for the handful of draw kinds used in this package.
    def standard_normal(self, size=None) -> np.ndarray:
        return self.generator.standard_normal(size=size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size=size)

    def random(self, size=None):
        return self.generator.random(size=size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high=high, size=size)

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"SeededRng(seed={self.seed})"


def sample_unit_sphere(d: int, rng: SeededRng, n: Optional[int] = None) -> np.ndarray:
    """Uniform point(s) on the unit sphere in R^d.

    Gaussian draws normalized to unit length; rows whose Gaussian vector
    underflows to (near-)zero norm are redrawn, so the result always has
    norm within 1e-12 of 1.  Returns shape (d,) when ``n`` is None, else
    (n, d).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    squeeze = n is None
    count = 1 if squeeze else int(n)
    if count < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    out = np.empty((count, d), dtype=np.float64)
    need = np.ones(count, dtype=bool)
    while need.any():
        draws = rng.standard_normal(size=(int(need.sum()), d))
        norms = np.linalg.norm(draws, axis=1)
        good = norms > 1e-150
        idx = np.flatnonzero(need)[good]
        out[idx] = draws[good] / norms[good, None]
        need[idx] = False
    return out[0] if squeeze else out


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, by modified Lentz iteration.

    Converges rapidly for x < (a+1)/(a+b+2); the caller applies the symmetry
    I_x(a,b) = 1 - I_{1-x}(b,a) outside that range.
    """
    tiny = 1e-300
    tol = 1e-15
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 500):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h
    raise RuntimeError(f"incomplete beta continued fraction failed for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the CDF of the Beta(a, b) law at x, for a, b > 0, 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def ks_statistic(sorted_cdf_values: np.ndarray) -> float:
    """Kolmogorov-Smirnov sup distance given CDF values of *sorted* samples."""
    n = len(sorted_cdf_values)
    if n == 0:
        raise ValueError("need at least one sample")
    grid = np.arange(1, n + 1, dtype=np.float64) / n
    return float(
        max(
            np.max(grid - sorted_cdf_values),
            np.max(sorted_cdf_values - (grid - 1.0 / n)),
        )
    )


def beta_law_check(d: int, x: np.ndarray, n_samples: int, rng: SeededRng) -> float:
    """KS distance of empirical projections <W, x> from their exact law.

    Draws ``n_samples`` uniform unit vectors W, forms t = (<W, x>/|x| + 1)/2,
    and compares the empirical CDF with I_t((d-1)/2, (d-1)/2).  Requires
    d >= 2 (for d = 1 the projection is +-|x| with equal mass, a two-point
    law outside the Beta family).
    """
    if d < 2:
        raise ValueError("projection law check requires d >= 2")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (d,):
        raise ValueError(f"x must have shape ({d},), got {x.shape}")
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise ValueError("x must be nonzero")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    w = sample_unit_sphere(d, rng, n_samples)
    t = np.sort((w @ x) / (2.0 * r) + 0.5)
    shape = 0.5 * (d - 1)
    cdf = np.array([regularized_incomplete_beta(shape, shape, float(v)) for v in t])
    return ks_statistic(cdf)
