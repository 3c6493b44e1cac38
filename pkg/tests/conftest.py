import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        number, name = marker.args
        _CRITERIA.append((number, name, rep.outcome, rep.duration, marker.kwargs.get("limit")))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, outcome, duration, limit in sorted(_CRITERIA):
        status = "PASS" if outcome == "passed" else "FAIL"
        budget = f", limit {limit:g}s" if limit else ""
        terminalreporter.write_line(f"[{status}] criterion {number}: {name} ({duration:.2f}s{budget})")
