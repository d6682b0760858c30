import pytest

_ACCEPTANCE = []


@pytest.fixture
def verdict(request):
    """Record one acceptance line: call with ``(label, ok, detail)``."""
    def record(label, ok, detail):
        _ACCEPTANCE.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
