"""Shared pytest wiring.

The acceptance module registers one verdict line per criterion; echoing
them in the terminal summary keeps them visible under output capture.
"""

from __future__ import annotations

_verdicts: list = []


def record_verdict(line: str) -> None:
    _verdicts.append(line)


def pytest_terminal_summary(terminalreporter) -> None:
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in _verdicts:
            terminalreporter.write_line(line)
