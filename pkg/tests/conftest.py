import pytest

ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run exhaustive n = 6 checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(num, title, passed, detail)``."""
    def record(num, title, passed, detail=""):
        ACCEPTANCE[num] = (title, passed, detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        terminalreporter.write_line(
            f"[{'PASS' if passed else 'FAIL'}] {num:2d}. {title}" + (f"  ({detail})" if detail else ""))
