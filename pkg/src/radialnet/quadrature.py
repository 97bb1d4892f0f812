"""Direction designs and sphere quadrature used by tuned network builders.

Tuned builders replace plain Monte Carlo direction averages with structured
designs that integrate low-degree polynomials exactly:

* ``orthobasis_orbit``: the 2d signed standard basis vectors — antipodal, and
  exact for all spherical polynomials of degree <= 3 in any dimension.
* ``icosahedron_vertices``: the 12 unit icosahedron vertices — antipodal and a
  spherical 5-design in R^3 (exact through degree 5).
* ``sphere_product_rule_s2``: Gauss-Legendre x uniform-azimuth product rule on
  S^2, exact for all spherical polynomials up to a requested degree; used when
  the integrand is itself a polynomial, making the quadrature error *zero*
  rather than merely small.
* ``random_rotation``: Haar-distributed rotations (QR of a Gaussian matrix
  with sign fixing) for decorrelating copies of a base design.

Antipodal symmetry matters: averaging h(<w, x>) over an antipodal direction
set annihilates every odd power of <w, x> exactly, which tuned builders use
to cancel whole error channels instead of bounding them.
"""

from __future__ import annotations

import math

import numpy as np

from .sphere import SeededRng

__all__ = [
    "random_rotation",
    "orthobasis_orbit",
    "icosahedron_vertices",
    "direction_design",
    "sphere_product_rule_s2",
]


def random_rotation(d: int, rng: SeededRng) -> np.ndarray:
    """Haar-uniform orthogonal matrix via QR with the standard sign fix."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    gauss = rng.standard_normal((d, d))
    q, r = np.linalg.qr(gauss)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs[None, :]


def orthobasis_orbit(d: int) -> np.ndarray:
    """The 2d unit vectors {+-e_i}: antipodal, exact to spherical degree 3.

    For this set, mean of <w, u>^2 over w equals 1/d (the exact sphere moment)
    for every unit u, and all odd moments vanish; degree-4 moments are *not*
    matched, which callers handle by rotation averaging or channel bounds.
    """
    eye = np.eye(d)
    return np.concatenate([eye, -eye], axis=0)


def icosahedron_vertices() -> np.ndarray:
    """The 12 unit icosahedron vertices: a spherical 5-design in R^3.

    Cyclic permutations of (0, +-1, +-phi) with phi the golden ratio,
    normalized to unit length.  Averages of any spherical polynomial of
    degree <= 5 over these 12 points equal the sphere average exactly.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    base = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            base.append((0.0, s1, s2 * phi))
            base.append((s1, s2 * phi, 0.0))
            base.append((s2 * phi, 0.0, s1))
    verts = np.array(sorted(set(base)), dtype=np.float64)
    return verts / np.linalg.norm(verts, axis=1)[:, None]


def direction_design(d: int, rng: SeededRng, rotations: int = 1) -> np.ndarray:
    """Antipodal direction design: rotated copies of the best base set for d.

    Base set: icosahedron for d = 3 (degree-5 exact), signed orthobasis
    otherwise (degree-3 exact).  ``rotations`` independent Haar rotations of
    the base are stacked; rotation 0 is the identity so designs with more
    rotations extend (never discard) smaller ones drawn from the same stream.
    """
    if rotations < 1:
        raise ValueError("rotations must be >= 1")
    base = icosahedron_vertices() if d == 3 else orthobasis_orbit(d)
    blocks = [base]
    for _ in range(rotations - 1):
        blocks.append(base @ random_rotation(d, rng).T)
    return np.concatenate(blocks, axis=0)


def sphere_product_rule_s2(degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Product quadrature on S^2 exact for spherical polynomials up to ``degree``.

    Gauss-Legendre nodes in cos(theta) (q = ceil((degree+1)/2) points are
    exact for polynomial degree 2q-1 >= degree) crossed with M uniformly
    spaced azimuths, M even and > degree, which integrates e^{i k phi}
    exactly for all |k| <= degree.  Weights are normalized to sum to 1
    (sphere-average convention).  The node set is antipodal because M is
    even and Gauss-Legendre nodes are symmetric about 0.

    Returns (nodes, weights) with nodes of shape (q * M, 3).
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    q = max(1, math.ceil((degree + 1) / 2))
    m = degree + 1
    m = m + (m % 2)  # make even (also makes the rule antipodal)
    m = max(m, 2)
    cos_theta, gl_weights = np.polynomial.legendre.leggauss(q)
    sin_theta = np.sqrt(np.maximum(0.0, 1.0 - cos_theta**2))
    azimuth = 2.0 * np.pi * np.arange(m) / m
    ca, sa = np.cos(azimuth), np.sin(azimuth)
    nodes = np.empty((q * m, 3), dtype=np.float64)
    weights = np.empty(q * m, dtype=np.float64)
    for i in range(q):
        rows = slice(i * m, (i + 1) * m)
        nodes[rows, 0] = sin_theta[i] * ca
        nodes[rows, 1] = sin_theta[i] * sa
        nodes[rows, 2] = cos_theta[i]
        weights[rows] = gl_weights[i] / (2.0 * m)
    return nodes, weights
