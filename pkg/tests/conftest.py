import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one acceptance verdict line; printed again in the terminal summary."""

    def emit(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
