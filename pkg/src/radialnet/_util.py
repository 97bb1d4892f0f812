"""Small shared utilities: deterministic hashing, atomic file output, canonical JSON.

Nothing in here is mathematical; these helpers keep the deterministic-workflow
promises (stable sub-seed derivation, crash-safe output files, value-exact float
round-trips) made by the rest of the package.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from fractions import Fraction
from typing import Any

__all__ = [
    "splitmix64",
    "derive_subseed",
    "atomic_write_text",
    "canonical_json",
    "ceil_with_float_guard",
    "fraction_to_string",
    "fraction_from_string",
    "E_LOWER",
    "E_UPPER",
]

_MASK64 = (1 << 64) - 1

# Rational brackets for Euler's number, used whenever an inequality involving e
# must be decided in exact rational arithmetic.  e = 2.718281828459045235...
E_LOWER = Fraction(27182818284590452, 10**16)  # < e
E_UPPER = Fraction(27182818284590453, 10**16)  # > e


def splitmix64(x: int) -> int:
    """One round of the SplitMix64 mixer; the standard 64-bit avalanche function."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def derive_subseed(seed: int, worker_index: int) -> int:
    """Deterministic sub-seed for a worker: hash(seed XOR salted index).

    The salt (an odd 64-bit constant times index+1) keeps index 0 from being a
    fixed point, and the SplitMix64 hash decorrelates neighbouring indices.
    """
    salted = (seed & _MASK64) ^ (((worker_index + 1) * 0x9E3779B97F4A7C15) & _MASK64)
    return splitmix64(salted)


def atomic_write_text(path: str | os.PathLike[str], text: str) -> None:
    """Write ``text`` to ``path`` via a temp file + rename, so readers never see
    a partially written file (sweeps resume from previous outputs)."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def canonical_json(payload: Any) -> str:
    """Serialize to JSON with sorted keys and shortest round-trip float repr.

    Python's ``repr`` of a float is the shortest string that parses back to the
    identical IEEE-754 double, so dumping and re-loading is value-exact.
    """
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)


def ceil_with_float_guard(value: float, rel: float = 1e-12) -> int:
    """Ceiling that forgives upward float noise of relative size ``rel``.

    Formulas like ``ceil(36 / eps**2)`` are specified over the real value of
    ``eps``; evaluating them on the IEEE double closest to a decimal input can
    land a hair above an exact integer (e.g. 400.00000000000003) and round a
    width up spuriously.  Subtracting one part in 10^12 before the ceiling
    restores the intended integer while never being able to skip one (widths
    of interest are far below 10^12).
    """
    return math.ceil(value - abs(value) * rel)


def fraction_to_string(x: Fraction) -> str:
    """Exact decimal-free representation 'numerator/denominator'."""
    return f"{x.numerator}/{x.denominator}"


def fraction_from_string(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)
