import pytest

_LINES = []


@pytest.fixture
def criterion_line():
    """Tests call the returned function with their PASS/FAIL line; all lines
    are printed at the end of the session."""
    def record(line):
        _LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
