"""Named radial target profiles and a minimal expression parser for custom ones.

The shipped zoo (all on [0, 1], all with explicit Lipschitz bounds):

* ``"fd"``          — the flat radial series for dimension d (needs ``d``),
* ``"monomial:k"``  — phi(z) = z^(2k) (needs the half-degree k),
* ``"linear"``      — phi(z) = z,
* ``"square"``      — phi(z) = z^2,
* ``"abs_half"``    — phi(z) = |z - 1/2|,
* ``"cosine"``      — phi(z) = (1 - cos(pi z)) / pi  (1-Lipschitz),
* ``"const:c"``     — the constant c,

plus arbitrary arithmetic expressions in the variable ``z`` (e.g.
``"0.5*z**2 + sin(z)/4"``) parsed through a whitelisted AST evaluator — no
``eval`` of raw strings.  Expression profiles get an *empirical* Lipschitz
bound measured on a dense grid (flagged in the label), which is adequate for
the sanity checks that consume it.
"""

from __future__ import annotations

import ast
import math
from typing import Optional

import numpy as np

from .bernstein import RadialProfile
from .specialfn import alpha_coeff, fd_eval_closed

__all__ = [
    "profile_linear",
    "profile_square",
    "profile_abs_half",
    "profile_cosine",
    "profile_const",
    "profile_monomial",
    "profile_fd",
    "profile_from_expression",
    "profile_shifted",
    "get_profile",
]


def profile_linear() -> RadialProfile:
    return RadialProfile(
        eval=lambda r: float(r),
        lipschitz_bound=1.0,
        label="linear",
        eval_vec=lambda r: np.asarray(r, dtype=np.float64),
    )


def profile_square() -> RadialProfile:
    return RadialProfile(
        eval=lambda r: float(r) ** 2,
        lipschitz_bound=2.0,
        label="square",
        eval_vec=lambda r: np.asarray(r, dtype=np.float64) ** 2,
    )


def profile_abs_half() -> RadialProfile:
    return RadialProfile(
        eval=lambda r: abs(float(r) - 0.5),
        lipschitz_bound=1.0,
        label="abs_half",
        eval_vec=lambda r: np.abs(np.asarray(r, dtype=np.float64) - 0.5),
    )


def profile_cosine() -> RadialProfile:
    return RadialProfile(
        eval=lambda r: (1.0 - math.cos(math.pi * float(r))) / math.pi,
        lipschitz_bound=1.0,
        label="cosine",
        eval_vec=lambda r: (1.0 - np.cos(np.pi * np.asarray(r, dtype=np.float64))) / np.pi,
    )


def profile_const(c: float) -> RadialProfile:
    c = float(c)
    return RadialProfile(
        eval=lambda r: c,
        lipschitz_bound=0.0,
        label=f"const:{c}",
        eval_vec=lambda r: np.full(np.asarray(r).shape, c, dtype=np.float64),
    )


def profile_monomial(k: int) -> RadialProfile:
    """phi(z) = z^(2k); Lipschitz constant 2k on [0, 1] (k >= 1)."""
    if k < 1:
        raise ValueError(f"half-degree k must be >= 1, got {k}")
    p = 2 * k
    return RadialProfile(
        eval=lambda r: float(r) ** p,
        lipschitz_bound=float(p),
        label=f"monomial:{k}",
        eval_vec=lambda r: np.asarray(r, dtype=np.float64) ** p,
    )


def _fd_vectorized(d: int, r: np.ndarray) -> np.ndarray:
    """Direct even-series evaluation of the flat radial series, vectorized.

    Generates terms by the exact ratio recurrence until the shared majorant
    (at the largest |z| in the batch) certifies a tail below 1e-14.
    """
    z = np.abs(np.asarray(r, dtype=np.float64))
    zmax = float(np.max(z)) if z.size else 0.0
    zsq = z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    # scalar majorant m_k = (zmax^2/2)^k / k!
    m = 1.0
    k = 0
    while True:
        q = 0.5 * zmax * zmax / (k + 2)
        if q < 1.0 and m * q / (1.0 - q) < 1e-14:
            return total
        term = term * zsq / ((2 * k + 2) * (d + 2 * k))
        total = total + term
        m *= 0.5 * zmax * zmax / (k + 1)
        k += 1
        if k > 10_000:
            raise RuntimeError("vectorized series failed to converge; |z| too large")


def profile_fd(d: int) -> RadialProfile:
    """The flat radial series profile for dimension d, with derivative-based bound.

    The Lipschitz constant on [0, 1] is F'(1) = sum_k 2k alpha_{2k}(d), summed
    to machine precision (the terms decay factorially).
    """
    lip = 0.0
    k = 1
    while True:
        t = 2 * k * float(alpha_coeff(d, k))
        lip += t
        if t < 1e-17 and k > 4:
            break
        k += 1
    return RadialProfile(
        eval=lambda r: fd_eval_closed(d, abs(float(r))),
        lipschitz_bound=lip * (1 + 1e-12) + 1e-15,
        label=f"fd:d={d}",
        eval_vec=lambda r: _fd_vectorized(d, r),
    )


_ALLOWED_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
}
_ALLOWED_CONSTS = {"pi": math.pi, "e": math.e}


def _eval_expr_node(node: ast.AST, z: np.ndarray) -> np.ndarray:
    if isinstance(node, ast.Expression):
        return _eval_expr_node(node.body, z)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float)):
            return np.float64(node.value)
        raise ValueError(f"literal {node.value!r} not allowed in profile expressions")
    if isinstance(node, ast.Name):
        if node.id == "z":
            return z
        if node.id in _ALLOWED_CONSTS:
            return np.float64(_ALLOWED_CONSTS[node.id])
        raise ValueError(f"unknown name {node.id!r} in profile expression")
    if isinstance(node, ast.BinOp):
        left = _eval_expr_node(node.left, z)
        right = _eval_expr_node(node.right, z)
        ops = {
            ast.Add: np.add,
            ast.Sub: np.subtract,
            ast.Mult: np.multiply,
            ast.Div: np.divide,
            ast.Pow: np.power,
        }
        for node_type, func in ops.items():
            if isinstance(node.op, node_type):
                return func(left, right)
        raise ValueError(f"operator {type(node.op).__name__} not allowed")
    if isinstance(node, ast.UnaryOp):
        operand = _eval_expr_node(node.operand, z)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return +operand
        raise ValueError(f"unary operator {type(node.op).__name__} not allowed")
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _ALLOWED_FUNCS:
            raise ValueError("only whitelisted single-argument functions are allowed")
        if len(node.args) != 1 or node.keywords:
            raise ValueError("profile functions take exactly one positional argument")
        return _ALLOWED_FUNCS[node.func.id](_eval_expr_node(node.args[0], z))
    raise ValueError(f"syntax element {type(node).__name__} not allowed in profile expressions")


def profile_from_expression(expr: str) -> RadialProfile:
    """Profile from an arithmetic expression in ``z`` (whitelisted AST, no eval).

    The Lipschitz bound is estimated from difference quotients on a 4001-point
    grid and inflated by 5%; it is empirical, which suffices for the sanity
    warnings that use it.
    """
    tree = ast.parse(expr, mode="eval")
    grid = np.linspace(0.0, 1.0, 4001)
    vals = np.asarray(_eval_expr_node(tree, grid), dtype=np.float64)
    vals = np.broadcast_to(vals, grid.shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"expression {expr!r} is non-finite on [0, 1]")
    lip = float(np.max(np.abs(np.diff(vals)) / np.diff(grid))) * 1.05 + 1e-12

    def eval_scalar(r: float) -> float:
        return float(_eval_expr_node(tree, np.float64(r)))

    def eval_vec(r: np.ndarray) -> np.ndarray:
        out = _eval_expr_node(tree, np.asarray(r, dtype=np.float64))
        return np.broadcast_to(np.asarray(out, dtype=np.float64), np.asarray(r).shape).copy()

    return RadialProfile(
        eval=eval_scalar,
        lipschitz_bound=lip,
        label=f"expr:{expr}",
        eval_vec=eval_vec,
    )


def profile_shifted(profile: RadialProfile, c: float) -> RadialProfile:
    """The profile phi + c (same Lipschitz bound)."""
    c = float(c)
    base_vec = profile.eval_vec
    return RadialProfile(
        eval=lambda r: profile.eval(r) + c,
        lipschitz_bound=profile.lipschitz_bound,
        label=f"{profile.label}+{c}",
        eval_vec=(lambda r: base_vec(r) + c) if base_vec is not None else None,
    )


def get_profile(name: str, d: Optional[int] = None) -> RadialProfile:
    """Resolve a profile by zoo name, ``monomial:k`` / ``const:c`` form, or expression."""
    simple = {
        "linear": profile_linear,
        "square": profile_square,
        "abs_half": profile_abs_half,
        "cosine": profile_cosine,
    }
    if name in simple:
        return simple[name]()
    if name == "fd":
        if d is None:
            raise ValueError("profile 'fd' requires the dimension d")
        return profile_fd(d)
    if name.startswith("monomial:"):
        return profile_monomial(int(name.split(":", 1)[1]))
    if name.startswith("const:"):
        return profile_const(float(name.split(":", 1)[1]))
    return profile_from_expression(name)
