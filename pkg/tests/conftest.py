import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, title, ok, detail)``."""
    lines = request.config.stash[_LINES_KEY]

    def record(number, title, ok, detail=""):
        lines.append((number, title, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(lines, key=lambda t: t[0]):
        status = "PASS" if ok else "FAIL"
        extra = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}{extra}")
