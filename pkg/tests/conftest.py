"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line each."""

from collections import defaultdict

import pytest

_outcomes: dict[int, list[tuple[str, str]]] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    _titles[n] = title
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            state = "xfail"
        else:
            state = rep.outcome
        _outcomes[n].append((item.name, state))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        states = _outcomes[n]
        ok = all(s == "passed" for _, s in states)
        line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {_titles[n]}"
        if not ok:
            bad = ", ".join(f"{name} [{s}]" for name, s in states if s != "passed")
            line += f"  <- {bad}"
        tr.write_line(line)
