import pytest
from hypothesis import settings

from wheelkit.freealg import FreeAlgebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def kx():
    return FreeAlgebra(["x"])


@pytest.fixture
def kxy():
    return FreeAlgebra(["x", "y"])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
