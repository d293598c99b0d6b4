import pytest

from dlplab.fixtures import models_of


@pytest.fixture
def mods():
    """``mods("p q", "")`` builds the model set ``{{p, q}, ∅}``."""
    return models_of


# --- acceptance report: one pass/fail line per criterion ----------------------

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "FAIL (known, xfail)"
        else:
            outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _CRITERIA.setdefault(marker, []).append((report.nodeid.split("::")[-1], outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        parts = _CRITERIA[n]
        ok = all(o == "PASS" for _, o in parts)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}")
        if not ok or len(parts) > 1:
            for name, o in parts:
                tr.write_line(f"    {o:<20} {name}")
