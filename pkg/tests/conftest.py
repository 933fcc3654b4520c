import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Time a block, enforce its budget, and log one PASS/FAIL line."""

    @contextmanager
    def run(number: int, title: str, budget_s: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE_LINES.append(f"FAIL  criterion {number:>2}: {title} ({elapsed:.1f}s) -- {exc!r}"[:300])
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < budget_s
        status = "PASS" if ok else "FAIL"
        _ACCEPTANCE_LINES.append(
            f"{status}  criterion {number:>2}: {title} ({elapsed:.1f}s, budget {budget_s:.0f}s)")
        assert ok, f"criterion {number} exceeded its {budget_s}s budget ({elapsed:.1f}s)"

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
