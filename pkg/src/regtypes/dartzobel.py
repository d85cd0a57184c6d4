"""Dart-Zobel inclusion test for regular types (without constant type symbols).

``dz_subset(g, t1, t2)`` is complete for regular types (it answers true
whenever the inclusion holds) but not correct: on the skewed-tree grammar
in :mod:`regtypes.builtin` it answers true for ``alpha <= beta`` although
``g(h(h(a,b),a))`` refutes it.  The behaviour is kept as is.

Sequences are tuples of pure type terms, sequence sets are frozensets of
equal-length tuples, and the assumption set is a frozenset of
``(type symbol, frozenset of terms)`` pairs.
"""

from __future__ import annotations

import sys
from typing import Callable, Iterable

from .grammar import Grammar
from .terms import App, Sym, Term, show_seq, show_seqset

__all__ = [
    "DEFAULT_FUEL",
    "Fuel",
    "FuelExhausted",
    "dz_subset",
    "dz_subsetv",
    "expand_seq",
    "expands_set",
    "open_seq",
    "opens_set",
    "selects",
]

DEFAULT_FUEL = 10**6

Seq = tuple
SeqSet = frozenset
Assumptions = frozenset


class FuelExhausted(RuntimeError):
    """The recursion ran past its step budget; treat as a suspected non-termination."""


class Fuel:
    def __init__(self, budget: int = DEFAULT_FUEL):
        if budget < 1:
            raise ValueError("fuel must be positive")
        self.budget = budget
        self.left = budget

    def burn(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted(f"more than {self.budget} recursive steps")

    @property
    def used(self) -> int:
        return self.budget - self.left


def heads(Psi: Iterable[Seq]) -> frozenset:
    return frozenset(s[0] for s in Psi)


def tails(Psi: Iterable[Seq]) -> frozenset:
    return frozenset(s[1:] for s in Psi)


def expand_seq(g: Grammar, psi: Seq) -> frozenset:
    head = psi[0]
    if not isinstance(head, Sym):
        return frozenset([psi])
    return frozenset((rhs,) + psi[1:] for rhs in g.rules_for(head.name))


def expands_set(g: Grammar, Psi: Iterable[Seq]) -> frozenset:
    out: set = set()
    for psi in Psi:
        out |= expand_seq(g, psi)
    return frozenset(out)


def selects(tau: Term, Psi: Iterable[Seq]) -> frozenset:
    """Sequences of Psi whose head has the same root function symbol as ``tau``."""
    if isinstance(tau, Sym):
        raise ValueError(f"selects needs a function-rooted term, got type symbol {tau}")
    out = set()
    for psi in Psi:
        if isinstance(psi[0], Sym):
            raise ValueError(f"selects needs expanded sequences, got head {psi[0]}")
        if psi[0].name == tau.name:
            out.add(psi)
    return frozenset(out)


def open_seq(psi: Seq) -> Seq:
    head = psi[0]
    if isinstance(head, Sym):
        raise ValueError(f"cannot open a sequence headed by type symbol {head}")
    return head.args + psi[1:]


def opens_set(Psi: Iterable[Seq]) -> frozenset:
    return frozenset(open_seq(psi) for psi in Psi)


def _ensure_stack(limit: int = 20000) -> None:
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)


def _add_assumption(C: frozenset, head: Sym, hs: frozenset, covered) -> frozenset:
    """Add <head, hs> to C, keeping only entries that no other entry makes redundant.

    An entry is only ever used through ``covered(heads, ups)``, so <b, U> can
    be dropped when another <b, U'> covers every heads set that U covers.
    """
    if any(b == head and covered(hs, ups) for b, ups in C):
        return C
    return frozenset(e for e in C if not (e[0] == head and covered(e[1], hs))) | {(head, hs)}


def dz_subsetv(
    g: Grammar,
    psi: Seq,
    Psi: Iterable[Seq],
    C: Iterable[tuple[Sym, frozenset]] = (),
    fuel: Fuel | int = DEFAULT_FUEL,
    trace: Callable[[str], None] | None = None,
    flipped_assumption_test: bool = False,
) -> bool:
    """Decide (approximately) whether the sequence type psi is included in Psi.

    Alternatives are tried in order and the first applicable one is used.
    ``flipped_assumption_test`` swaps the superset test on assumptions for
    the subset test found in the original presentation; it exists only to
    show how the answers change.
    """
    if isinstance(fuel, int):
        fuel = Fuel(fuel)
    _ensure_stack()
    psi = tuple(psi)
    Psi = frozenset(tuple(s) for s in Psi)
    if any(len(s) != len(psi) for s in Psi):
        raise ValueError("all sequences must have the length of psi")

    def emit(alt: int, psi: Seq, Psi: frozenset, C: frozenset) -> None:
        if trace is not None:
            trace(f"dz\t{alt}\t{show_seq(psi)}\t{show_seqset(Psi)}\t{len(C)}")

    def covered(hs: frozenset, ups: frozenset) -> bool:
        return hs <= ups if flipped_assumption_test else hs >= ups

    # go is a pure function of its arguments, so answers can be cached; with
    # a trace attached every call is replayed so the log shows the full tree
    memo: dict | None = {} if trace is None else None

    def go(psi: Seq, Psi: frozenset, C: frozenset) -> bool:
        if memo is None:
            return step(psi, Psi, C)
        key = (psi, Psi, C)
        if key not in memo:
            memo[key] = step(psi, Psi, C)
        return memo[key]

    def step(psi: Seq, Psi: frozenset, C: frozenset) -> bool:
        fuel.burn()
        if not Psi:
            emit(1, psi, Psi, C)
            return False
        if not psi:
            emit(2, psi, Psi, C)
            return True
        head = psi[0]
        hs = heads(Psi)
        if isinstance(head, Sym) and any(b == head and covered(hs, ups) for b, ups in C):
            emit(3, psi, Psi, C)
            return go(psi[1:], tails(Psi), C)
        if isinstance(head, Sym):
            emit(4, psi, Psi, C)
            C2 = C | {(head, hs)} if memo is None else _add_assumption(C, head, hs, covered)
            return all(go(p, Psi, C2) for p in sorted(expand_seq(g, psi), key=show_seq))
        emit(5, psi, Psi, C)
        return go(open_seq(psi), opens_set(selects(head, expands_set(g, Psi))), C)

    return go(psi, Psi, frozenset((b, frozenset(u)) for b, u in C))


def dz_subset(
    g: Grammar,
    tau1: Term,
    tau2: Term,
    fuel: Fuel | int = DEFAULT_FUEL,
    trace: Callable[[str], None] | None = None,
    flipped_assumption_test: bool = False,
) -> bool:
    return dz_subsetv(
        g, (tau1,), [(tau2,)], (), fuel, trace, flipped_assumption_test=flipped_assumption_test
    )
