"""Regular types given by regular term grammars: inclusion tests and oracles."""

from .dartzobel import DEFAULT_FUEL, FuelExhausted, dz_subset, dz_subsetv
from .grammar import EmptyTypeError, Grammar, ParseError, Rule, nonempty_symbols, parse_grammar, render, simplify
from .semantics import (
    closure_member,
    enumerate_terms,
    find_regular_counterexample,
    find_td_counterexample,
    member,
    member_td,
)
from .tdsubset import td_subset, td_subset_term, td_subsetv_seq
from .terms import App, Sym, depth

__version__ = "0.1.0"
