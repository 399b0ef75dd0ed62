import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=os.environ.get("MCG_HYPOTHESIS_RANDOM") is None,
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden_data():
    from mcg_workbench import golden

    return golden.load_all()


# Acceptance results, one line per criterion, printed after the run.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        def order(key):
            digits = "".join(ch for ch in key if ch.isdigit())
            return int(digits), key

        for key in sorted(ACCEPTANCE_LINES, key=order):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
