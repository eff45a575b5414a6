import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("repo")

GOLDEN = Path(__file__).parent / "golden"

_acceptance: list[tuple[int, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and rep.when == "call":
        n, label = mark.args
        _acceptance.append((n, label, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n, label, status in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {n} [{label}]: {status}")


@pytest.fixture
def golden():
    return GOLDEN
