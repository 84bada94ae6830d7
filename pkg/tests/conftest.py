"""Collects the outcome of tests marked ``criterion(n)`` and prints one line per criterion."""

import pytest

CRITERIA = {
    1: "algebraic laws on random witness structures",
    2: "golden worked examples",
    3: "facet counts and generating functions",
    4: "structural properties at desk scale",
    5: "P(m,n) is a path",
    6: "encoding isomorphisms",
    7: "export determinism",
}

_outcomes: dict = {}
_notes: dict = {}


@pytest.fixture
def note(request):
    """Attach a short remark (such as a runtime) to the criterion's summary line."""
    marker = request.node.get_closest_marker("criterion")

    def add(text):
        _notes.setdefault(marker.args[0], []).append(text)

    return add


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    ok, count = _outcomes.get(n, (True, 0))
    if rep.failed or (rep.when == "call" and rep.skipped):
        ok = False
    if rep.when == "call":
        count += 1
    _outcomes[n] = (ok, count)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        ok, count = _outcomes[n]
        status = "PASS" if ok else "FAIL"
        extra = "; ".join(_notes.get(n, []))
        line = f"criterion {n} ({CRITERIA.get(n, '?')}): {status} [{count} tests]"
        terminalreporter.write_line(line + (f" {extra}" if extra else ""))
