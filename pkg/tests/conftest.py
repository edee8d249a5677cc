"""Shared pytest wiring: the acceptance suite's per-criterion verdict lines.

test_acceptance.py appends one PASS/FAIL line per criterion; printing them
from the hook below keeps them visible in the terminal report regardless of
output capturing.
"""

ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
