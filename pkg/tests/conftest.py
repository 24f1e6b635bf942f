import pytest

ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@pytest.fixture
def record_criterion():
    def record(k: int, ok: bool, seconds: float, note: str = ""):
        ACCEPTANCE[k] = (ok, seconds, note)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[k]
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s)"
        terminalreporter.write_line(line + (f"  {note}" if note else ""))
