from __future__ import annotations

import pytest

# criterion number -> (title, list of (test name, passed))
_CRITERIA: dict[int, tuple[str, list[tuple[str, bool]]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA.setdefault(number, (title, []))[1].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({len(results)} checks)"
        if failed:
            line += f"  failing: {', '.join(failed)}"
        terminalreporter.write_line(line)
