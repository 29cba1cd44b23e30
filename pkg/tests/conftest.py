import pytest

_CRITERION_LINES: list[str] = []


@pytest.fixture(scope="session")
def criterion_log():
    """Collector for acceptance pass/fail lines, echoed after the run."""
    return _CRITERION_LINES.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
