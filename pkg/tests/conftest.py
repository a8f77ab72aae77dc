import re


def pytest_runtest_logreport(report):
    """Acceptance tests announce failures as one line per criterion."""
    if report.when != "call" or not report.failed:
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m:
        print(f"\n[criterion {int(m.group(1)):02d}] FAIL: see traceback")
