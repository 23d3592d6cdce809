"""Shared fixtures, plus a terminal section that lists one line per
acceptance criterion regardless of capture settings."""

import pytest

from photon_fidelity import QuadratureSpec, example_state

_CRITERION_LINES = []


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def unit_state():
    return example_state(1.0)


@pytest.fixture
def criterion():
    """Recorder for acceptance-criterion result lines."""
    def record(line: str) -> None:
        _CRITERION_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)
