"""Grammars used as fixed reference points in tests, the CLI and the fuzz harness."""

from .grammar import Grammar, parse_grammar, simplify

NAT_LIST = """\
# natural numbers and lists of naturals
%sig 0/0 s/1 nil/0 cons/2
Nat -> 0 | s(Nat)
Natlist -> nil | cons(Nat,Natlist)
"""

# alpha is not included in beta, yet Dart-Zobel answers true
SKEWED = """\
%sig a/0 b/0 g/1 h/2
alpha -> g(omega)
beta -> g(theta) | g(sigma)
theta -> a | h(theta,a)
sigma -> b | h(sigma,b)
omega -> a | b | h(omega,a) | h(omega,b)
"""

# The witness the trace misses: left-skewed with mixed leaves.
SKEWED_WITNESS = "g(h(h(a,b),a))"


def nat_list() -> Grammar:
    return simplify(parse_grammar(NAT_LIST))


def skewed() -> Grammar:
    return simplify(parse_grammar(SKEWED))
