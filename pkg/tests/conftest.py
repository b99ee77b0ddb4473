import pytest

from helpers import RUNNING, build_all


@pytest.fixture(scope="session")
def running():
    trace = []
    fm, bundle = build_all([RUNNING], 3, trace=trace)
    return fm, bundle, trace


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
