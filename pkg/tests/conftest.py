import re
from collections import defaultdict

CRITERIA = {
    1: "family exactness",
    2: "X_r model",
    3: "turning model",
    4: "limit convergence",
    5: "property suite",
    6: "exhaustive-search consistency",
    7: "analytic interval goldens",
}

_results: dict[int, list[bool]] = defaultdict(list)
_NAME = re.compile(r"::test_c(\d+)_")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _NAME.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _results[int(m.group(1))].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for c, title in CRITERIA.items():
        runs = _results.get(c)
        if not runs:
            terminalreporter.write_line(f"criterion {c} ({title}): NOT RUN")
            continue
        verdict = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {c} ({title}): {verdict} ({sum(runs)}/{len(runs)} tests passed)")
