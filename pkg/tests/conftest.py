import random

from hypothesis import settings, strategies as st

from dafocus.formula import Bias
from dafocus.generate import atoms_for, random_formula, random_sequent

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ATOMS = atoms_for("ab", (Bias.NEG, Bias.POS))
ATOMS_NEG = atoms_for("ab", (Bias.NEG, Bias.NEG))


@st.composite
def formulas(draw, max_connectives=4, atoms=ATOMS):
    rng = random.Random(draw(st.integers(0, 2**32)))
    n = draw(st.integers(0, max_connectives))
    f = None
    while f is None:
        f = random_formula(rng, n, atoms)
    return f


@st.composite
def seqs(draw, max_connectives=4, atoms=ATOMS, max_antecedent=3):
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_sequent(rng, max_connectives, atoms, max_antecedent)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
