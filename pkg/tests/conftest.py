from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = None
    detail = ""
    for key, value in report.user_properties:
        if key == "criterion":
            number = value
        elif key == "detail":
            detail = value
    if number is None:
        return
    status = "PASS" if report.outcome == "passed" else "FAIL"
    _CRITERIA.setdefault(number, []).append((status, detail))


@pytest.fixture
def criterion(request, record_property):
    """Tag the test with its criterion number; returns a detail recorder."""
    marker = request.node.get_closest_marker("criterion")
    record_property("criterion", marker.args[0])

    def note(text: str) -> None:
        record_property("detail", text)

    return note


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        status = "PASS" if all(s == "PASS" for s, _ in results) else "FAIL"
        details = "; ".join(d for _, d in results if d)
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {details}")
