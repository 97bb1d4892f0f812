"""Unit tests for the command-line interface."""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction

import pytest

from radialnet import __version__
from radialnet.cli import main
from radialnet.monomial import solve_monomial_plan
from radialnet.network import load_network


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    monkeypatch.delenv("RADIALNET_SEED", raising=False)


def test_fd_stdout(capsys):
    assert main(["fd", "--d", "3", "--grid", "0,0.5,1"]) == 0
    out = capsys.readouterr().out
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["z", "series", "closed", "diff"]
    assert len(rows) == 4
    for row in rows[1:]:
        assert abs(float(row[3])) <= 1e-10


def test_fd_linspace_grid_and_out(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["fd", "--d", "2", "--grid", "lin:0:1:11", "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert len(rows) == 12


def test_fd_malformed_grid_usage_error(capsys):
    assert main(["fd", "--d", "3", "--grid", "zero,one"]) == 2
    assert main(["fd", "--d", "3", "--grid", "lin:0:1"]) == 2
    assert main(["fd", "--d", "3"]) == 2  # missing grid


def test_unknown_flag_exits_two():
    with pytest.raises(SystemExit) as exc_info:
        main(["fd", "--bogus", "1"])
    assert exc_info.value.code == 2


def test_coeffs_monomial_matches_library(capsys):
    assert main(
        ["coeffs", "--kind", "monomial", "--d", "3", "--halfdegree", "2", "--epsilon", "0.1"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    plan = solve_monomial_plan(3, 2, 0.1)
    assert payload["tool"] == "radialnet"
    assert payload["version"] == __version__
    assert Fraction(int(payload["eta"]["num"]), int(payload["eta"]["den"])) == plan.eta
    got = [Fraction(int(c["num"]), int(c["den"])) for c in payload["coefficients"]]
    assert got == list(plan.coeffs)


def test_coeffs_evenpoly(capsys):
    assert main(
        ["coeffs", "--kind", "evenpoly", "--profile", "abs_half", "--epsilon", "0.5"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["degree"] == 64
    assert payload["measured_error"] <= 0.5
    powers = [c["power"] for c in payload["coefficients"]]
    assert powers == list(range(0, 65, 2))
    for c in payload["coefficients"]:
        assert abs(Fraction(int(c["num"]), int(c["den"]))) <= 2**64


def test_coeffs_bad_kind(capsys):
    assert main(["coeffs", "--kind", "fourier"]) == 2
    assert main(["coeffs", "--kind", "monomial", "--d", "3"]) == 2


def test_build_verify_round_trip(tmp_path, capsys):
    prefix = str(tmp_path / "mono")
    code = main(
        [
            "build", "--target", "monomial:1", "--d", "3", "--epsilon", "0.3",
            "--seed", "9", "--budget", "8192", "--restarts", "2",
            "--out-prefix", prefix,
        ]
    )
    assert code == 0
    net = load_network(prefix + ".network.json")
    assert net.meta["seed"] == 9
    assert net.meta["config_echo"]["epsilon"] == 0.3
    report = json.loads((tmp_path / "mono.report.json").read_text())
    assert report["passed"] is True
    assert report["seed"] == 9
    assert "wall_time_seconds" in report
    plan = json.loads((tmp_path / "mono.plan.json").read_text())
    assert plan["plan"]["halfdegree"] == 1

    assert main(
        ["verify", "--network", prefix + ".network.json", "--budget", "8192",
         "--restarts", "2", "--seed", "4", "--out", str(tmp_path / "check.json")]
    ) == 0
    check = json.loads((tmp_path / "check.json").read_text())
    assert check["passed"] is True

    # an unreachable tolerance must flip the exit code to 3
    assert main(
        ["verify", "--network", prefix + ".network.json", "--budget", "4096",
         "--restarts", "2", "--seed", "4", "--epsilon", "1e-9"]
    ) == 3


def test_build_theoretical_overflow_exit_four(tmp_path):
    prefix = str(tmp_path / "thw")
    code = main(
        [
            "build", "--target", "profile:abs_half", "--d", "3", "--epsilon", "0.05",
            "--mode", "theoretical", "--out-prefix", prefix,
        ]
    )
    assert code == 4
    err = json.loads((tmp_path / "thw.error.json").read_text())
    assert err["error"] == "width_overflow"
    assert err["required_width_log10"] > 6


def test_build_unknown_target(tmp_path):
    assert main(
        ["build", "--target", "nonsense:x", "--d", "3", "--epsilon", "0.3",
         "--out-prefix", str(tmp_path / "x")]
    ) == 2


def test_seed_precedence(tmp_path, monkeypatch):
    prefix = str(tmp_path / "envseed")
    monkeypatch.setenv("RADIALNET_SEED", "31")
    assert main(
        ["build", "--target", "fd", "--d", "2", "--epsilon", "0.5", "--activation", "exp",
         "--budget", "8192", "--restarts", "2", "--out-prefix", prefix]
    ) == 0
    net = load_network(prefix + ".network.json")
    assert net.meta["seed"] == 31

    prefix2 = str(tmp_path / "flagseed")
    assert main(
        ["build", "--target", "fd", "--d", "2", "--epsilon", "0.5", "--activation", "exp",
         "--budget", "8192", "--restarts", "2", "--seed", "77", "--out-prefix", prefix2]
    ) == 0
    net2 = load_network(prefix2 + ".network.json")
    assert net2.meta["seed"] == 77


def test_config_file(tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text(
        "# sample job\n"
        "target = monomial:1\n"
        "d = 3\n"
        "epsilon = 0.3\n"
        "budget = 8192\n"
        "restarts = 2\n"
        "seed = 5\n"
        f"out_prefix = {tmp_path / 'fromcfg'}\n"
    )
    assert main(["build", "--config", str(cfg)]) == 0
    net = load_network(str(tmp_path / "fromcfg.network.json"))
    assert net.meta["seed"] == 5
    assert net.meta["config_echo"]["target"] == "monomial:1"


def test_fourier_subcommand(tmp_path):
    prefix = str(tmp_path / "four")
    code = main(
        ["fourier", "--profile", "linear", "--d", "1", "--epsilon", "0.25",
         "--budget", "8192", "--restarts", "2", "--seed", "3", "--out-prefix", prefix]
    )
    assert code == 0
    doc = json.loads((tmp_path / "four.fourier.json").read_text())
    assert doc["moment_report"]["v_moment"] > 0
    assert doc["passed"] is True
    net = load_network(prefix + ".network.json")
    assert net.meta["builder"] == "fourier"


def test_sweep_resumable(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    args = [
        "sweep", "--target", "fd", "--d", "2,3", "--epsilon", "0.5,0.4",
        "--activation", "exp", "--seed", "123", "--budget", "8192",
        "--restarts", "2", "--out", str(out),
    ]
    assert main(args) == 0
    fresh_rows = list(csv.reader(out.read_text().splitlines()))
    assert fresh_rows[0] == ["d", "epsilon", "width", "sup_error", "wall_time"]
    assert len(fresh_rows) == 5
    raw = out.read_bytes()
    assert raw.count(b"\r\n") >= 5  # RFC-4180 line endings

    # interrupt: keep only the first two completed cells, then resume
    ledger = str(out) + ".cells.jsonl"
    lines = open(ledger).readlines()
    assert len(lines) == 4
    with open(ledger, "w") as fh:
        fh.writelines(lines[:2])
    os.remove(out)
    assert main(args) == 0
    resumed_rows = list(csv.reader(out.read_text().splitlines()))
    assert [r[:4] for r in resumed_rows] == [r[:4] for r in fresh_rows]
    # resumed run reuses recorded wall times for completed cells
    assert resumed_rows[1][4] == fresh_rows[1][4]
    assert len(open(ledger).readlines()) == 4


def test_sweep_missing_args():
    assert main(["sweep", "--target", "fd"]) == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert __version__ in capsys.readouterr().out
