"""Shared fixtures: acceptance reporting and the built-network registry.

Every acceptance test that builds a network registers it (together with the
target profile and the verification parameters) so the serialization
criterion can replay each one through a save/load round trip at the end of
the session.  Criterion outcomes are collected and printed as one PASS/FAIL
line each in the terminal summary.
"""

from __future__ import annotations

import dataclasses

import pytest

from radialnet.bernstein import RadialProfile
from radialnet.network import DepthTwoNetwork
from radialnet.verify import ErrorReport


@dataclasses.dataclass
class BuiltNetworkRecord:
    """Everything needed to replay one verification bit-for-bit."""

    label: str
    net: DepthTwoNetwork
    profile: RadialProfile
    budget: int
    restarts: int
    verify_seed: int
    sup_estimate: float


class SuiteRegistry:
    def __init__(self) -> None:
        self.records: list[BuiltNetworkRecord] = []

    def add(
        self,
        label: str,
        net: DepthTwoNetwork,
        profile: RadialProfile,
        budget: int,
        restarts: int,
        report: ErrorReport,
    ) -> None:
        self.records.append(
            BuiltNetworkRecord(
                label=label,
                net=net,
                profile=profile,
                budget=budget,
                restarts=restarts,
                verify_seed=report.seed,
                sup_estimate=report.sup_estimate,
            )
        )


_REGISTRY = SuiteRegistry()
_CRITERION_LINES: dict[str, str] = {}


@pytest.fixture(scope="session")
def suite_registry() -> SuiteRegistry:
    return _REGISTRY


@pytest.fixture(scope="session")
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: str, passed: bool, detail: str) -> None:
        word = "PASS" if passed else "FAIL"
        _CRITERION_LINES[number] = (
            f"ACCEPTANCE CRITERION {number}: {word} - {detail}"
        )

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")

    def sort_key(item):
        head = item[0].split("(")[0]
        try:
            return (int(head), item[0])
        except ValueError:
            return (99, item[0])

    for _, line in sorted(_CRITERION_LINES.items(), key=sort_key):
        terminalreporter.write_line(line)
