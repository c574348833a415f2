import pytest

# criterion number -> (ok, line); filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


def pytest_configure(config):
    config.stash[_KEY] = ACCEPTANCE_LINES


_KEY = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k][1])
    passed = sum(1 for ok, _ in lines.values() if ok)
    terminalreporter.write_line(f"{passed}/{len(lines)} criteria passed")
