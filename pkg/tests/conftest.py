import pytest
from hypothesis import strategies as st

from paradefinite.parsing import parse_formula, parse_sequent
from paradefinite.syntax import FALSUM, And, Atom, Implies, Not, Or

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def F(text):
    return parse_formula(text)


def S(text):
    return parse_sequent(text)


def formulas(atoms=("p", "q", "r"), max_leaves=12):
    leaves = st.one_of(st.sampled_from([Atom(a) for a in atoms]), st.just(FALSUM))

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@pytest.fixture
def parse():
    return S
