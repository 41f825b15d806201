import re

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d\d)_(\w+)")
_outcomes: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    num, name = match.groups()
    if report.when == "call" or report.outcome != "passed":
        previous = _outcomes.get(num, ("PASS", name))[0]
        status = "FAIL" if report.outcome != "passed" or previous == "FAIL" else "PASS"
        _outcomes[num] = (status, name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        status, name = _outcomes[num]
        terminalreporter.write_line(f"criterion {int(num):2d} {status}  {name.replace('_', ' ')}")
