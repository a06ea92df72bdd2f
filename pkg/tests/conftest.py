import os
from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA = {
    1: "pair-space dimensions",
    2: "closed form spans the solution space",
    3: "axioms hold for affgebras from verified pairs",
    4: "fibre brackets reproduce the Lie algebra",
    5: "canonicalization is constant on orbits",
    6: "distinct canonical forms are separated",
    7: "gauge reduction shapes",
    8: "orbit-test reports are deterministic",
}

_results = defaultdict(lambda: [0, 0])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for n in getattr(report, "criteria", ()):
        _results[n][0] += 1
        _results[n][1] += report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criteria = tuple(m.args[0] for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _results:
            continue
        total, passed = _results[n]
        status = "PASS" if passed == total else "FAIL"
        tr.write_line(f"criterion {n}: {status}  {CRITERIA[n]} ({passed}/{total} checks)")
