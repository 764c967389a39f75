from fractions import Fraction

from hypothesis import settings, strategies as st

from coxeter_monodromy.algebra import MultiPoly
from coxeter_monodromy.classes import MonodromyClass, class_V

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, nvars=2, max_terms=4, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * nvars),
            small_fracs,
            max_size=max_terms,
        )
    )
    return MultiPoly(nvars, terms)


rotations = st.builds(lambda a, k: Fraction(a, k) % 1, st.integers(0, 23), st.integers(1, 12))

classes = st.dictionaries(rotations, st.integers(-3, 3), max_size=5).map(MonodromyClass)


@st.composite
def stable_classes(draw):
    """Integer combinations of the V_m: exactly the Galois-stable classes."""
    out = MonodromyClass()
    for m, c in draw(st.dictionaries(st.integers(1, 24), st.integers(-3, 3), max_size=6)).items():
        out = out + c * class_V(m)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
