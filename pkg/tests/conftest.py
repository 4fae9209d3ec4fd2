from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from wakimoto.core import FockVector, linear_combine, mono

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


COEFFS = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2), Fraction(-2)]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


@st.composite
def monomials(draw, max_modes=3, index=3):
    a = draw(st.lists(st.integers(-index, index), max_size=max_modes))
    b = draw(st.lists(st.integers(1, index), max_size=max_modes - len(a)))
    return mono(a, b)


@st.composite
def vectors(draw, max_terms=3, max_modes=3, index=3):
    terms = draw(st.lists(st.tuples(st.sampled_from(COEFFS), monomials(max_modes, index)), min_size=1, max_size=max_terms))
    return linear_combine((c, FockVector.basis(m)) for c, m in terms)


@pytest.fixture
def vac():
    return FockVector.basis(mono())
