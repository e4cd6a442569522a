import os
import sys

import pytest

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)
FIXTURES = os.path.join(os.path.dirname(HERE), "fixtures")


def fixture_path(*parts):
    return os.path.join(FIXTURES, *parts)


def fixture_text(*parts):
    with open(fixture_path(*parts), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture
def fx():
    return fixture_path


# -- acceptance summary ---------------------------------------------------------
# tests marked criterion(n) report one PASS/FAIL line per criterion at the end

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call" and not rep.failed:
        return
    for m in item.iter_markers("criterion"):
        n = m.args[0]
        ok, total = _criteria.get(n, (True, 0))
        _criteria[n] = (ok and not rep.failed, total + (rep.when == "call"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, total = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({total} tests)")
