"""Replays the acceptance gate's per-criterion lines after the run.

Default output capture swallows prints from passing tests; the gate's
pass/fail lines belong in the visible summary.
"""
import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERION_LINES", None) if mod else None
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line)
