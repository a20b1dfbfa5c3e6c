"""Shared fixtures.  The F3 presentation is built once per test session."""

import pytest

from sdchains.fixtures import f1, f2, f3_chain
from sdchains.presentation import build_presentation
from sdchains.semidual import Chain

P = 5


@pytest.fixture(scope="session")
def F1():
    return f1(P)


@pytest.fixture(scope="session")
def F2():
    return f2(P)


@pytest.fixture(scope="session")
def f3_pair():
    return f3_chain(P)


@pytest.fixture(scope="session")
def F3(f3_pair):
    return f3_pair[0]


@pytest.fixture(scope="session")
def chain3(f3_pair):
    ring, mods = f3_pair
    return Chain(ring, mods, names=["C1", "C2"])


@pytest.fixture(scope="session")
def pres3(f3_pair):
    ring, mods = f3_pair
    return build_presentation(ring, Chain(ring, mods, names=["C1", "C2"]), bound=4)


# --------------------------------------------------- acceptance reporting

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "setup":
        item._setup_seconds = rep.duration
        if not rep.failed:
            return
    elif rep.when != "call":
        return
    number, title = mark.args
    if hasattr(rep, "wasxfail"):
        status = "FAIL (expected; see notes)"
    else:
        status = "PASS" if rep.passed else "FAIL"
    seconds = rep.duration + (getattr(item, "_setup_seconds", 0.0) if rep.when == "call" else 0.0)
    _criteria.setdefault(number, []).append((title, status, seconds))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        for title, status, secs in _criteria[number]:
            terminalreporter.write_line(f"criterion {number}: {status:26s} {title} ({secs:.2f}s)")
