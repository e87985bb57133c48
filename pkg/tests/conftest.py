import pytest

from cantorkab import factors, sequence

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def restore_caps():
    yield
    factors.set_enumeration_cap(factors.DEFAULT_ENUMERATION_CAP)
    sequence.set_prefix_cap(sequence.DEFAULT_PREFIX_CAP)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
