"""Shared pytest hooks.

The acceptance tests record one verdict line per criterion; the terminal
summary prints them after the run so the pass/fail ledger is visible even
though stdout inside tests is captured.
"""

ACCEPTANCE_LINES = []


def record_criterion(number, label, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    line = "[criterion %02d] %s: %s" % (number, label, verdict)
    if detail:
        line += " (%s)" % detail
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
