import pytest

from monopos.algebra import MultiPoly


@pytest.fixture
def x():
    """x[j] is the variable x_j."""
    return [None] + [MultiPoly.var(j, 6) for j in range(1, 7)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
