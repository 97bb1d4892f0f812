"""Command-line interface for building and checking radial approximators.

Subcommands
-----------
fd       Tabulate the flat radial series (series vs. closed form) on a grid.
coeffs   Emit exact rational coefficients (monomial plans, even polynomials).
build    Build a network for a target and verify it empirically.
verify   Re-verify a saved network JSON against its target.
fourier  Mollify a profile and report its Fourier weight-moment diagnostics.
sweep    Build a grid of (d, epsilon) cells and emit a CSV of results.

Exit codes: 0 success, 2 usage error, 3 verification failure, 4 width
overflow.  Every JSON document written embeds the tool version, the
effective configuration, the seed, and wall-clock time.  Files are written
atomically (temp file + rename).  Seed precedence: ``--seed`` flag, then the
``RADIALNET_SEED`` environment variable, then a ``seed`` entry in
``--config``, then the default 0.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from ._util import atomic_write_text, canonical_json, derive_subseed, fraction_to_string
from .bernstein import RadialProfile, even_poly_approx
from .expfeat import ExpFeatureBuildError, build_exp_network
from .fourier import build_fourier_network, mollify, v_moment
from .monomial import (
    WidthOverflowError,
    build_monomial_network,
    solve_monomial_plan,
)
from .network import DepthTwoNetwork, load_network, save_network
from .pipeline import build_radial_network
from .profiles import get_profile, profile_fd
from .sphere import SeededRng
from .specialfn import fd_eval_closed, fd_eval_series
from .verify import ErrorReport, estimate_sup_error

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3
EXIT_WIDTH_OVERFLOW = 4

_DEFAULT_SEED = 0
_SEED_ENV_VAR = "RADIALNET_SEED"


# --------------------------------------------------------------------------
# configuration handling
# --------------------------------------------------------------------------


def _load_config(path: Optional[str]) -> dict[str, str]:
    """Parse a flat ``key = value`` config file (``#`` comments, blank lines)."""
    if path is None:
        return {}
    config: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}"
                )
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    return config


class _Settings:
    """Effective option values: CLI flag > config entry > default."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]):
        self.args = args
        self.config = config
        self.echo: dict[str, Any] = {}

    def get(self, name: str, cast, default):
        flag_value = getattr(self.args, name, None)
        if flag_value is not None:
            value = flag_value
        elif name in self.config:
            raw = self.config[name]
            value = cast(raw) if cast is not None else raw
        else:
            value = default
        self.echo[name] = value
        return value

    def seed(self) -> int:
        """Seed precedence: --seed flag, RADIALNET_SEED env, config, default."""
        flag_value = getattr(self.args, "seed", None)
        if flag_value is not None:
            value = int(flag_value)
        elif os.environ.get(_SEED_ENV_VAR):
            value = int(os.environ[_SEED_ENV_VAR])
        elif "seed" in self.config:
            value = int(self.config["seed"])
        else:
            value = _DEFAULT_SEED
        self.echo["seed"] = value
        return value


def _envelope(
    command: str, settings: _Settings, seed: Optional[int], wall_time: float
) -> dict[str, Any]:
    return {
        "tool": "radialnet",
        "version": __version__,
        "command": command,
        "config": dict(settings.echo),
        "seed": seed,
        "wall_time_seconds": wall_time,
    }


def _write_json(path: str, payload: dict[str, Any]) -> None:
    atomic_write_text(path, canonical_json(payload) + "\n")


# --------------------------------------------------------------------------
# shared parsing helpers
# --------------------------------------------------------------------------


def _parse_grid(spec: str) -> np.ndarray:
    """Grid spec: comma list ``0,0.5,1`` or linspace ``lin:START:STOP:COUNT``."""
    spec = spec.strip()
    if spec.startswith("lin:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise ValueError(f"linspace grid must be lin:START:STOP:COUNT, got {spec!r}")
        start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
        if count < 1:
            raise ValueError(f"linspace grid needs COUNT >= 1, got {count}")
        return np.linspace(start, stop, count)
    values = [float(tok) for tok in spec.split(",") if tok.strip() != ""]
    if not values:
        raise ValueError(f"empty grid spec {spec!r}")
    return np.asarray(values, dtype=float)


def _parse_int_list(spec: str) -> list[int]:
    values = [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    if not values:
        raise ValueError(f"empty integer list {spec!r}")
    return values


def _parse_float_list(spec: str) -> list[float]:
    values = [float(tok) for tok in spec.split(",") if tok.strip() != ""]
    if not values:
        raise ValueError(f"empty float list {spec!r}")
    return values


def _target_profile(target: str, d: int) -> RadialProfile:
    """Resolve a target spec to the radial profile a network is checked against."""
    if target == "fd":
        return profile_fd(d)
    if target.startswith("monomial:"):
        k = int(target.split(":", 1)[1])
        return get_profile(f"monomial:{k}")
    if target.startswith("profile:"):
        return get_profile(target.split(":", 1)[1], d=d)
    if target.startswith("fourier:"):
        return get_profile(target.split(":", 1)[1], d=d)
    # fall through: treat the spec itself as a profile name or expression
    return get_profile(target, d=d)


# --------------------------------------------------------------------------
# build dispatch (shared by cmd_build, cmd_fourier, cmd_sweep)
# --------------------------------------------------------------------------


class _BuildOutcome:
    def __init__(
        self,
        net: DepthTwoNetwork,
        report_dict: dict[str, Any],
        plan_dict: Optional[dict[str, Any]],
        sup_error: float,
        passed: bool,
    ):
        self.net = net
        self.report_dict = report_dict
        self.plan_dict = plan_dict
        self.sup_error = sup_error
        self.passed = passed


def _dispatch_build(
    target: str,
    d: int,
    epsilon: float,
    activation: str,
    mode: str,
    rng: SeededRng,
    budget: int,
    restarts: int,
    width: Optional[int] = None,
    extension: str = "constant",
) -> _BuildOutcome:
    """Build a network for ``target`` and return it with its reports.

    Raises WidthOverflowError (exit 4 at the CLI) and RuntimeError /
    ExpFeatureBuildError (exit 3) like the underlying builders.
    """
    if target == "fd":
        eps_feature = epsilon if activation == "exp" else epsilon / 2.0
        net, cert = build_exp_network(
            d,
            eps_feature,
            rng,
            verify_budget=budget,
            verify_restarts=restarts,
        )
        if activation == "relu":
            from .activation import substitute_activation

            net = substitute_activation(net, epsilon / 2.0)
            verify_rng = SeededRng(derive_subseed(rng.seed, 3))
            report = estimate_sup_error(
                net, profile_fd(d), budget=budget, restarts=restarts, rng=verify_rng
            )
            net.meta["empirical_sup_error"] = report.sup_estimate
            net.meta["epsilon"] = epsilon
            net.meta["verify_seed"] = verify_rng.seed
            return _BuildOutcome(
                net,
                report.as_dict(),
                cert.as_dict(),
                report.sup_estimate,
                report.sup_estimate <= epsilon,
            )
        net.meta["epsilon"] = epsilon
        return _BuildOutcome(
            net,
            cert.as_dict(),
            None,
            cert.empirical_sup_error,
            cert.empirical_sup_error <= epsilon,
        )

    if target.startswith("monomial:"):
        k = int(target.split(":", 1)[1])
        net, report, plan = build_monomial_network(
            d,
            k,
            epsilon,
            activation=activation,
            rng=rng,
            mode=mode,
            verify_budget=budget,
            verify_restarts=restarts,
        )
        return _BuildOutcome(
            net,
            report.as_dict(),
            plan.as_dict(),
            report.sup_estimate,
            report.sup_estimate <= epsilon,
        )

    if target.startswith("profile:"):
        profile = get_profile(target.split(":", 1)[1], d=d)
        net, report, plan = build_radial_network(
            profile,
            d,
            epsilon,
            activation=activation,
            rng=rng,
            mode=mode,
            verify_budget=budget,
            verify_restarts=restarts,
        )
        return _BuildOutcome(
            net,
            report.as_dict(),
            plan.as_dict(),
            report.sup_estimate,
            report.sup_estimate <= epsilon,
        )

    if target == "fourier" or target.startswith("fourier:"):
        if target == "fourier":
            raise ValueError(
                "the fourier target needs a profile: use fourier:NAME "
                "(e.g. fourier:linear)"
            )
        profile = get_profile(target.split(":", 1)[1], d=d)
        net, report = build_fourier_network(
            profile,
            d,
            epsilon,
            n=width,
            rng=rng,
            verify_budget=budget,
            verify_restarts=restarts,
        )
        return _BuildOutcome(
            net,
            report.as_dict(),
            None,
            report.sup_estimate,
            report.sup_estimate <= epsilon,
        )

    raise ValueError(
        f"unknown target {target!r}: expected fd, monomial:K, profile:NAME, "
        "or fourier:NAME"
    )


# --------------------------------------------------------------------------
# subcommand: fd
# --------------------------------------------------------------------------


def cmd_fd(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    d = settings.get("d", int, None)
    if d is None or d < 1:
        print("fd: --d must be a positive integer", file=sys.stderr)
        return EXIT_USAGE
    tol = settings.get("tol", float, 1e-12)
    grid_spec = settings.get("grid", str, None)
    if grid_spec is None:
        print("fd: --grid is required (comma list or lin:START:STOP:COUNT)", file=sys.stderr)
        return EXIT_USAGE
    try:
        grid = _parse_grid(grid_spec)
    except ValueError as exc:
        print(f"fd: malformed grid: {exc}", file=sys.stderr)
        return EXIT_USAGE

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(["z", "series", "closed", "diff"])
    for z in grid:
        series = fd_eval_series(d, float(z), tol=tol)
        closed = fd_eval_closed(d, float(z), tol=tol)
        writer.writerow(
            [repr(float(z)), repr(series), repr(closed), repr(series - closed)]
        )
    text = buffer.getvalue()
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --------------------------------------------------------------------------
# subcommand: coeffs
# --------------------------------------------------------------------------


def _fraction_payload(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def cmd_coeffs(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    kind = settings.get("kind", str, None)
    started = time.perf_counter()

    if kind == "monomial":
        d = settings.get("d", int, None)
        n = settings.get("halfdegree", int, None)
        epsilon = settings.get("epsilon", float, None)
        if d is None or n is None or epsilon is None:
            print(
                "coeffs: kind=monomial needs --d, --halfdegree, --epsilon",
                file=sys.stderr,
            )
            return EXIT_USAGE
        plan = solve_monomial_plan(d, n, epsilon)
        payload = {
            "kind": "monomial",
            "d": plan.d,
            "halfdegree": plan.halfdegree,
            "epsilon": plan.epsilon_target,
            "eta": _fraction_payload(plan.eta),
            "eta_decimal": fraction_to_string(plan.eta),
            "scales": [_fraction_payload(s) for s in plan.scales],
            "coefficients": [_fraction_payload(c) for c in plan.coeffs],
            "bias": _fraction_payload(plan.b0),
        }
    elif kind == "evenpoly":
        name = settings.get("profile", str, None)
        epsilon = settings.get("epsilon", float, None)
        degree = settings.get("degree", int, None)
        d = settings.get("d", int, None)
        if name is None or epsilon is None:
            print("coeffs: kind=evenpoly needs --profile, --epsilon", file=sys.stderr)
            return EXIT_USAGE
        profile = get_profile(name, d=d)
        poly = even_poly_approx(profile, epsilon, degree_override=degree)
        payload = {
            "kind": "evenpoly",
            "profile": profile.label,
            "epsilon": epsilon,
            "degree": poly.degree,
            "shift": _fraction_payload(poly.shift),
            "coefficients": [
                {"power": 2 * i, **_fraction_payload(c)}
                for i, c in enumerate(poly.coeffs)
            ],
            "measured_error": poly.measured_error,
        }
    else:
        print(
            f"coeffs: unknown --kind {kind!r} (expected monomial or evenpoly)",
            file=sys.stderr,
        )
        return EXIT_USAGE

    wall = time.perf_counter() - started
    document = _envelope("coeffs", settings, None, wall)
    document.update(payload)
    text = canonical_json(document) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --------------------------------------------------------------------------
# subcommand: build
# --------------------------------------------------------------------------


def _write_build_outputs(
    prefix: str,
    command: str,
    settings: _Settings,
    seed: int,
    wall: float,
    outcome: _BuildOutcome,
) -> None:
    envelope = _envelope(command, settings, seed, wall)
    outcome.net.meta.setdefault("tool_version", __version__)
    outcome.net.meta["config_echo"] = dict(settings.echo)
    outcome.net.meta["seed"] = seed
    outcome.net.meta["wall_time_seconds"] = wall
    save_network(outcome.net, prefix + ".network.json")
    report_doc = dict(envelope)
    report_doc["report"] = outcome.report_dict
    report_doc["passed"] = outcome.passed
    _write_json(prefix + ".report.json", report_doc)
    if outcome.plan_dict is not None:
        plan_doc = dict(envelope)
        plan_doc["plan"] = outcome.plan_dict
        _write_json(prefix + ".plan.json", plan_doc)


def _write_error_json(
    prefix: str,
    command: str,
    settings: _Settings,
    seed: int,
    wall: float,
    error_kind: str,
    message: str,
    extra: Optional[dict[str, Any]] = None,
) -> None:
    doc = _envelope(command, settings, seed, wall)
    doc["error"] = error_kind
    doc["message"] = message
    if extra:
        doc.update(extra)
    _write_json(prefix + ".error.json", doc)


def cmd_build(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    target = settings.get("target", str, None)
    if target is None:
        print("build: --target is required", file=sys.stderr)
        return EXIT_USAGE
    d = settings.get("d", int, None)
    epsilon = settings.get("epsilon", float, None)
    if d is None or epsilon is None:
        print("build: --d and --epsilon are required", file=sys.stderr)
        return EXIT_USAGE
    activation = settings.get("activation", str, "relu")
    mode = settings.get("mode", str, "tuned")
    budget = settings.get("budget", int, 100_000)
    restarts = settings.get("restarts", int, 10)
    width = settings.get("width", int, None)
    prefix = settings.get("out_prefix", str, "build")
    seed = settings.seed()

    started = time.perf_counter()
    try:
        outcome = _dispatch_build(
            target,
            d,
            epsilon,
            activation,
            mode,
            SeededRng(seed),
            budget,
            restarts,
            width=width,
        )
    except WidthOverflowError as exc:
        wall = time.perf_counter() - started
        extra: dict[str, Any] = {
            "required_width_log10": exc.required_width_log10,
            "max_width": exc.max_width,
        }
        if exc.required_width is not None:
            extra["required_width"] = str(exc.required_width)
        _write_error_json(
            prefix, "build", settings, seed, wall, "width_overflow", str(exc), extra
        )
        print(f"build: width overflow: {exc}", file=sys.stderr)
        return EXIT_WIDTH_OVERFLOW
    except (RuntimeError, ExpFeatureBuildError) as exc:
        wall = time.perf_counter() - started
        _write_error_json(
            prefix, "build", settings, seed, wall, "verification_failure", str(exc)
        )
        print(f"build: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except ValueError as exc:
        print(f"build: {exc}", file=sys.stderr)
        return EXIT_USAGE

    wall = time.perf_counter() - started
    _write_build_outputs(prefix, "build", settings, seed, wall, outcome)
    if not outcome.passed:
        print(
            f"build: empirical sup error {outcome.sup_error:.6g} exceeds "
            f"epsilon {epsilon}",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    print(
        f"build: ok target={target} d={d} epsilon={epsilon} "
        f"width={outcome.net.width} sup_error={outcome.sup_error:.6g}"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# subcommand: verify
# --------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    network_path = settings.get("network", str, None)
    if network_path is None:
        print("verify: --network is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        net = load_network(network_path)
    except (OSError, ValueError, KeyError) as exc:
        print(f"verify: cannot load network: {exc}", file=sys.stderr)
        return EXIT_USAGE

    target = settings.get("target", str, None)
    if target is None:
        meta = net.meta
        builder = meta.get("builder")
        if builder == "exp_feature":
            target = "fd"
        elif builder == "monomial":
            target = f"monomial:{meta.get('halfdegree')}"
        elif builder in ("pipeline", "fourier") and "profile" in meta:
            target = f"profile:{meta['profile']}"
        if target is None:
            print(
                "verify: --target not given and network metadata does not "
                "identify one",
                file=sys.stderr,
            )
            return EXIT_USAGE
    epsilon = settings.get("epsilon", float, None)
    if epsilon is None:
        meta_eps = net.meta.get("epsilon")
        if meta_eps is None:
            print(
                "verify: --epsilon not given and network metadata has none",
                file=sys.stderr,
            )
            return EXIT_USAGE
        epsilon = float(meta_eps)
        settings.echo["epsilon"] = epsilon
    budget = settings.get("budget", int, 100_000)
    restarts = settings.get("restarts", int, 10)
    seed = settings.seed()

    try:
        profile = _target_profile(target, net.dim)
    except (ValueError, KeyError) as exc:
        print(f"verify: bad target: {exc}", file=sys.stderr)
        return EXIT_USAGE

    started = time.perf_counter()
    report = estimate_sup_error(
        net, profile, budget=budget, restarts=restarts, rng=SeededRng(seed)
    )
    wall = time.perf_counter() - started
    passed = report.sup_estimate <= epsilon
    doc = _envelope("verify", settings, seed, wall)
    doc["report"] = report.as_dict()
    doc["epsilon"] = epsilon
    doc["passed"] = passed
    text = canonical_json(doc) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    if not passed:
        print(
            f"verify: sup error {report.sup_estimate:.6g} exceeds epsilon {epsilon}",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# --------------------------------------------------------------------------
# subcommand: fourier
# --------------------------------------------------------------------------


def cmd_fourier(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    name = settings.get("profile", str, None)
    d = settings.get("d", int, None)
    epsilon = settings.get("epsilon", float, None)
    if name is None or d is None or epsilon is None:
        print("fourier: --profile, --d, --epsilon are required", file=sys.stderr)
        return EXIT_USAGE
    extension = settings.get("extension", str, "constant")
    width = settings.get("width", int, None)
    budget = settings.get("budget", int, 100_000)
    restarts = settings.get("restarts", int, 10)
    prefix = settings.get("out_prefix", str, "fourier")
    seed = settings.seed()

    started = time.perf_counter()
    try:
        profile = get_profile(name, d=d)
        smoothed = mollify(profile, d, epsilon, extension=extension)
        moment_report = v_moment(smoothed)
        net, report = build_fourier_network(
            profile,
            d,
            epsilon,
            n=width,
            rng=SeededRng(seed),
            verify_budget=budget,
            verify_restarts=restarts,
        )
    except (RuntimeError, ValueError) as exc:
        print(f"fourier: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wall = time.perf_counter() - started

    doc = _envelope("fourier", settings, seed, wall)
    doc["moment_report"] = moment_report.as_dict()
    doc["build_report"] = report.as_dict()
    passed = report.sup_estimate <= epsilon
    doc["passed"] = passed
    _write_json(prefix + ".fourier.json", doc)
    net.meta.setdefault("tool_version", __version__)
    net.meta["config_echo"] = dict(settings.echo)
    net.meta["seed"] = seed
    net.meta["wall_time_seconds"] = wall
    save_network(net, prefix + ".network.json")
    if not passed:
        print(
            f"fourier: sup error {report.sup_estimate:.6g} exceeds epsilon {epsilon}",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    print(
        f"fourier: ok profile={name} d={d} epsilon={epsilon} "
        f"width={net.width} sup_error={report.sup_estimate:.6g} "
        f"v_moment={moment_report.v_moment:.6g}"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# subcommand: sweep
# --------------------------------------------------------------------------


def _sweep_cell(
    index: int,
    target: str,
    d: int,
    epsilon: float,
    activation: str,
    mode: str,
    master_seed: int,
    budget: int,
    restarts: int,
) -> dict[str, Any]:
    """Run one sweep cell; never raises (failures are encoded in the row)."""
    cell_seed = derive_subseed(master_seed, index)
    started = time.perf_counter()
    try:
        outcome = _dispatch_build(
            target,
            d,
            epsilon,
            activation,
            mode,
            SeededRng(cell_seed),
            budget,
            restarts,
        )
        width: Any = outcome.net.width
        sup_error: Any = outcome.sup_error
    except WidthOverflowError as exc:
        width = (
            str(exc.required_width)
            if exc.required_width is not None
            else f"10^{exc.required_width_log10:.3f}"
        )
        sup_error = ""
    except (RuntimeError, ExpFeatureBuildError, ValueError) as exc:
        width = ""
        sup_error = f"error:{type(exc).__name__}"
    wall = time.perf_counter() - started
    return {
        "index": index,
        "d": d,
        "epsilon": epsilon,
        "width": width,
        "sup_error": sup_error,
        "wall_time": wall,
    }


def _read_cell_ledger(path: str) -> dict[int, dict[str, Any]]:
    rows: dict[int, dict[str, Any]] = {}
    if not os.path.exists(path):
        return rows
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            rows[int(row["index"])] = row
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    settings = _Settings(args, config)
    target = settings.get("target", str, None)
    d_spec = settings.get("d", str, None)
    eps_spec = settings.get("epsilon", str, None)
    out_path = settings.get("out", str, None)
    if target is None or d_spec is None or eps_spec is None or out_path is None:
        print(
            "sweep: --target, --d, --epsilon, --out are required", file=sys.stderr
        )
        return EXIT_USAGE
    try:
        d_values = _parse_int_list(str(d_spec))
        eps_values = _parse_float_list(str(eps_spec))
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    activation = settings.get("activation", str, "relu")
    mode = settings.get("mode", str, "tuned")
    budget = settings.get("budget", int, 100_000)
    restarts = settings.get("restarts", int, 10)
    workers = settings.get("workers", int, 1)
    seed = settings.seed()

    cells = [
        (index, d, eps)
        for index, (d, eps) in enumerate(
            (d, eps) for d in d_values for eps in eps_values
        )
    ]
    ledger_path = out_path + ".cells.jsonl"
    completed = _read_cell_ledger(ledger_path)
    pending = [cell for cell in cells if cell[0] not in completed]

    ledger_lock = threading.Lock()

    def run_cell(cell: tuple[int, int, float]) -> dict[str, Any]:
        index, d, eps = cell
        row = _sweep_cell(
            index, target, d, eps, activation, mode, seed, budget, restarts
        )
        with ledger_lock:
            with open(ledger_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
                fh.flush()
        return row

    if pending:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            for row in pool.map(run_cell, pending):
                completed[int(row["index"])] = row

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(["d", "epsilon", "width", "sup_error", "wall_time"])
    for index, _, _ in cells:
        row = completed[index]
        writer.writerow(
            [
                row["d"],
                repr(float(row["epsilon"])),
                row["width"],
                row["sup_error"] if row["sup_error"] != "" else "",
                repr(float(row["wall_time"])),
            ]
        )
    atomic_write_text(out_path, buffer.getvalue())
    print(f"sweep: wrote {len(cells)} cells to {out_path}")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser assembly
# --------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--seed", type=int, help="master seed (overrides env/config)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialnet",
        description=(
            "Build and check shallow networks approximating radial functions "
            "on the unit ball."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fd = sub.add_parser("fd", help="tabulate the flat radial series on a grid")
    p_fd.add_argument("--d", type=int, help="ambient dimension (>= 1)")
    p_fd.add_argument(
        "--grid", help="evaluation grid: comma list or lin:START:STOP:COUNT"
    )
    p_fd.add_argument("--tol", type=float, help="series tail tolerance")
    p_fd.add_argument("--out", help="write CSV here instead of stdout")
    _add_common(p_fd)
    p_fd.set_defaults(func=cmd_fd)

    p_coeffs = sub.add_parser(
        "coeffs", help="emit exact rational coefficients as JSON"
    )
    p_coeffs.add_argument("--kind", choices=["monomial", "evenpoly"])
    p_coeffs.add_argument("--d", type=int)
    p_coeffs.add_argument("--halfdegree", type=int, help="monomial half-degree n")
    p_coeffs.add_argument("--epsilon", type=float)
    p_coeffs.add_argument("--profile", help="profile name (evenpoly)")
    p_coeffs.add_argument("--degree", type=int, help="even degree override")
    p_coeffs.add_argument("--out", help="write JSON here instead of stdout")
    _add_common(p_coeffs)
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_build = sub.add_parser("build", help="build a network and verify it")
    p_build.add_argument(
        "--target", help="fd | monomial:K | profile:NAME | fourier:NAME"
    )
    p_build.add_argument("--d", type=int)
    p_build.add_argument("--epsilon", type=float)
    p_build.add_argument("--activation", choices=["exp", "relu"])
    p_build.add_argument("--mode", choices=["tuned", "theoretical"])
    p_build.add_argument("--width", type=int, help="fixed width (fourier targets)")
    p_build.add_argument("--budget", type=int, help="verification sample budget")
    p_build.add_argument("--restarts", type=int, help="verification restarts")
    p_build.add_argument(
        "--out-prefix",
        dest="out_prefix",
        help="output prefix (PREFIX.network.json, PREFIX.report.json, ...)",
    )
    _add_common(p_build)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="re-verify a saved network JSON")
    p_verify.add_argument("--network", help="network JSON path")
    p_verify.add_argument(
        "--target", help="target spec (default: inferred from metadata)"
    )
    p_verify.add_argument(
        "--epsilon", type=float, help="tolerance (default: network metadata)"
    )
    p_verify.add_argument("--budget", type=int)
    p_verify.add_argument("--restarts", type=int)
    p_verify.add_argument("--out", help="write report JSON here instead of stdout")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_fourier = sub.add_parser(
        "fourier", help="mollify a profile and report Fourier diagnostics"
    )
    p_fourier.add_argument("--profile", help="profile name or expression")
    p_fourier.add_argument("--d", type=int, help="ambient dimension (1 or 3)")
    p_fourier.add_argument("--epsilon", type=float)
    p_fourier.add_argument("--extension", choices=["constant", "zero"])
    p_fourier.add_argument("--width", type=int, help="fixed feature count")
    p_fourier.add_argument("--budget", type=int)
    p_fourier.add_argument("--restarts", type=int)
    p_fourier.add_argument("--out-prefix", dest="out_prefix")
    _add_common(p_fourier)
    p_fourier.set_defaults(func=cmd_fourier)

    p_sweep = sub.add_parser(
        "sweep", help="build a (d, epsilon) grid of cells and emit CSV"
    )
    p_sweep.add_argument("--target")
    p_sweep.add_argument("--d", help="comma list of dimensions")
    p_sweep.add_argument("--epsilon", help="comma list of tolerances")
    p_sweep.add_argument("--activation", choices=["exp", "relu"])
    p_sweep.add_argument("--mode", choices=["tuned", "theoretical"])
    p_sweep.add_argument("--budget", type=int)
    p_sweep.add_argument("--restarts", type=int)
    p_sweep.add_argument("--workers", type=int, help="thread pool size (default 1)")
    p_sweep.add_argument("--out", help="final CSV path (ledger at OUT.cells.jsonl)")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except ValueError as exc:
        print(f"radialnet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"radialnet: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
