import pytest

# criterion id -> (passed, detail), filled by tests marked with @pytest.mark.criterion
_results: dict[str, tuple[bool, str]] = {}
_details: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion checked by this test")


@pytest.fixture
def detail(request):
    """Lets an acceptance test attach a one-line summary to its criterion."""
    marker = request.node.get_closest_marker("criterion")

    def record(text: str) -> None:
        _details[marker.args[0]] = text
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    _results[marker.args[0]] = (rep.passed, _details.get(marker.args[0], ""))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_results, key=lambda c: (int(c.split("(")[0]), c)):
        ok, text = _results[cid]
        line = f"criterion {cid}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  {text}" if text else line)
