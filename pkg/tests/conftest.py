import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS = []


@pytest.fixture
def record():
    def _record(label, ok, detail):
        _RESULTS.append((label, ok, detail))
        print(f"CRITERION {label}: {'PASS' if ok else 'FAIL'} - {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _RESULTS:
        terminalreporter.write_line(f"CRITERION {label:<12} {'PASS' if ok else 'FAIL'}  {detail}")
