"""Hypothesis strategies for small grammars over a fixed signature."""

from hypothesis import strategies as st

from regtypes.grammar import Grammar, Rule
from regtypes.terms import App, Sym

SIGMA = {"a": 0, "b": 0, "f": 1, "h": 2}
TYPES = ["A", "B", "C"]


def terms(types, max_depth):
    leaves = st.sampled_from([App("a"), App("b")] + [Sym(t) for t in types])
    if max_depth <= 1:
        return leaves
    sub = terms(types, max_depth - 1)
    return st.one_of(
        leaves,
        st.builds(lambda x: App("f", (x,)), sub),
        st.builds(lambda x, y: App("h", (x, y)), sub, sub),
    )


@st.composite
def grammars(draw, chains=False, max_rhs_depth=2):
    """Possibly unsimplified grammars (empty symbols, optional chain rules)."""
    n = draw(st.integers(1, len(TYPES)))
    types = TYPES[:n]
    rules = []
    for name in types:
        # every symbol gets a rule: the file format only knows symbols with rules
        for rhs in draw(st.lists(terms(types, max_rhs_depth), min_size=1, max_size=3)):
            if isinstance(rhs, Sym) and not chains:
                rhs = App("f", (rhs,))
            rules.append(Rule(name, rhs))
    return Grammar.build(SIGMA, rules, types)


def ground_terms(max_depth):
    leaves = st.sampled_from([App("a"), App("b")])
    if max_depth <= 1:
        return leaves
    sub = ground_terms(max_depth - 1)
    return st.one_of(
        leaves,
        st.builds(lambda x: App("f", (x,)), sub),
        st.builds(lambda x, y: App("h", (x, y)), sub, sub),
    )
