import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_configure(config):
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _CRITERION.match(item.name)
    if m and rep.when == "call" or (m and rep.when == "setup" and rep.failed):
        ok = rep.passed
        prev = item.config._criteria.get(int(m.group(1)), True)
        item.config._criteria[int(m.group(1))] = prev and ok


def pytest_terminal_summary(terminalreporter, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(crit):
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if crit[k] else 'FAIL'}")
