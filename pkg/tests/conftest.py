import pytest

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def record():
    """Store one pass/fail line per acceptance criterion for the terminal summary."""

    def put(number: int, ok: bool, text: str):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        print(ACCEPTANCE_LINES[number])
        return ok

    return put


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
