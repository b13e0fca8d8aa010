import pytest

from stablelab import parse_program

EX1_TEXT = "p. q :- p, not r. r :- not q. s :- not t."

# verdict lines collected by the acceptance suite, echoed after the run
ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture
def ex1():
    """Four-clause fixture with stable models {p,q,s} and {p,r,s}."""
    return parse_program(EX1_TEXT)


def names(prog, interps):
    """Model list -> sorted lists of atom names, for readable assertions."""
    return [prog.atom_names(m) for m in interps]
