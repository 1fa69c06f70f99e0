"""Echo the acceptance criterion results after the run.

Pytest captures stdout, so the per-criterion lines printed by the acceptance
tests would only show under -s. This summary hook repeats them where they are
always visible, and adds a FAIL line for any acceptance test that failed.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    lines = list(getattr(mod, "ACCEPTANCE_LINES", []))
    for rep in terminalreporter.stats.get("failed", []):
        if "test_acceptance" in rep.nodeid:
            lines.append(f"[acceptance] {rep.nodeid.split('::')[-1]}: FAIL")
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
