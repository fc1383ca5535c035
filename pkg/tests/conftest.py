import os

import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_record():
    """Log one acceptance criterion outcome for the end-of-run summary."""

    def record(name: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((name, passed, detail))
        print(f"[{'PASS' if passed else 'FAIL'}] {name} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PEGLDPC_FULL"):
        return
    skip = pytest.mark.skip(reason="full-size batch; set PEGLDPC_FULL=1")
    for item in items:
        if "full" in item.keywords:
            item.add_marker(skip)
