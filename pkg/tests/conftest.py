"""Shared pytest plumbing: a scoreboard printed after the run.

The acceptance tests record one line per check (and a few informational
lines for calibration-dependent positions); the summary hook prints them
all at the end of the session so the verdicts are visible even when the
individual tests pass quietly.
"""

SCOREBOARD: list[str] = []


def record_verdict(name: str, ok: bool, detail: str) -> None:
    SCOREBOARD.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def record_info(name: str, detail: str) -> None:
    SCOREBOARD.append(f"INFO  {name}: {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if SCOREBOARD:
        terminalreporter.section("acceptance scoreboard")
        for line in SCOREBOARD:
            terminalreporter.write_line(line)
