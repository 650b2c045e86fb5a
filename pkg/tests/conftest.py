import time
from contextlib import contextmanager

CRITERIA: dict[int, str] = {}


@contextmanager
def criterion(number: int, label: str, limit: float):
    """Record a one-line verdict for an acceptance criterion, including its runtime limit."""
    start = time.perf_counter()
    CRITERIA[number] = f"criterion {number:2d} FAIL  {label}"
    yield
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    CRITERIA[number] = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {label}  "
                        f"({elapsed:.1f}s, limit {limit:g}s)")
    print(CRITERIA[number])
    assert ok, f"runtime {elapsed:.1f}s over limit {limit:g}s"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])
