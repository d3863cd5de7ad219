import re

_RESULTS: dict[int, str] = {}
_NAME = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    n = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        if report.outcome == "failed" or _RESULTS.get(n) == "FAIL":
            _RESULTS[n] = "FAIL"
        elif report.when == "call":
            _RESULTS[n] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        terminalreporter.write_line(f"ACCEPTANCE {n} {_RESULTS[n]}")
