"""Collects acceptance verdicts and prints one line per criterion at the end of the run."""
import pytest

_VERDICTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def detail(request):
    """Tests append human-readable measurements here; they show up in the summary line."""
    notes = []
    request.node.acceptance_notes = notes
    return notes


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    notes = getattr(item, "acceptance_notes", [])
    _VERDICTS[number] = (title, rep.passed, "; ".join(notes))


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        title, ok, notes = _VERDICTS[number]
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}"
        if notes:
            line += f" [{notes}]"
        terminalreporter.write_line(line)
