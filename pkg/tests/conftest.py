import time

import pytest

_RESULTS = []


class AcceptanceRecorder:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.start = time.perf_counter()

    def done(self, ok, detail=""):
        secs = time.perf_counter() - self.start
        line = f"ACCEPTANCE {self.number:>2} {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {self.title}"
        if detail:
            line += f": {detail}"
        _RESULTS.append(line)
        print(line)
        assert ok, line
        assert secs < 60, f"criterion {self.number} exceeded 60 s"


@pytest.fixture
def acceptance():
    return AcceptanceRecorder


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
