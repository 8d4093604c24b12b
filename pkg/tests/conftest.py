"""Session-wide solver runs shared across test modules.

The expensive multi-start solves are memoized here so the acceptance
tests, ensemble checks and oracle comparisons all reuse one result per
channel (and per product pair) instead of re-solving.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

import qcap

SEED = 42

# One verdict line per acceptance check, echoed after the test summary so
# the pass/fail ledger is visible without -s.
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class SolveCache:
    def __init__(self):
        self._single: dict[str, tuple[qcap.CapacityResult, float]] = {}
        self._product: dict[tuple[str, str], tuple[qcap.CapacityResult, float]] = {}

    def single(self, name: str):
        if name not in self._single:
            ch = qcap.fixture_channel(name)
            t0 = time.perf_counter()
            res = qcap.multi_start(ch, qcap.SolverConfig(seed=SEED))
            self._single[name] = (res, time.perf_counter() - t0)
        return self._single[name]

    def product(self, left: str, right: str):
        key = (left, right)
        if key not in self._product:
            lhs = qcap.fixture_channel(left)
            rhs = qcap.fixture_channel(right)
            prod = qcap.tensor(lhs, rhs)
            t0 = time.perf_counter()
            res = qcap.multi_start(
                prod, qcap.SolverConfig(seed=SEED), ent_dims=(lhs.dim_in, rhs.dim_in)
            )
            self._product[key] = (res, time.perf_counter() - t0)
        return self._product[key]


@pytest.fixture(scope="session")
def solves() -> SolveCache:
    return SolveCache()


@pytest.fixture
def rng() -> np.random.Generator:
    # Fresh, identically seeded generator per test: deterministic
    # results independent of test execution order.
    return np.random.default_rng(20260823)
