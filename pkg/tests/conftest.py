"""Shared acceptance-verdict plumbing.

The acceptance tests record one (label, verdict) pair apiece; the
terminal-summary hook prints them as a section, so every run ends with
exactly one PASS/FAIL line per criterion regardless of capture mode.
"""

VERDICTS = []


class criterion:
    def __init__(self, label):
        self.label = label

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        verdict = "PASS" if exc_type is None else "FAIL"
        VERDICTS.append("%-58s %s" % (self.label, verdict))
        return False


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in VERDICTS:
        terminalreporter.write_line(line)
