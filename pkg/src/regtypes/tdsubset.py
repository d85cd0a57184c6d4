"""Inclusion test for tuple-distributive regular types.

Works term by term instead of on sequences: a sequence check is split into
independent checks of its components, which is sound only because the
tuple-distributive closure forgets the correlation between argument positions.
"""

from __future__ import annotations

from typing import Callable, Collection, Iterable

from .dartzobel import DEFAULT_FUEL, Fuel, _ensure_stack, heads, tails
from .grammar import Grammar
from .terms import Sym, Term, show_seq, show_seqset, show_set

__all__ = ["td_expand", "td_expands", "td_subset", "td_subset_term", "td_subsetv_seq"]


def td_expand(g: Grammar, tau: Term) -> frozenset:
    if isinstance(tau, Sym):
        return frozenset(g.rules_for(tau.name))
    return frozenset([tau])


def td_expands(g: Grammar, upsilon: Iterable[Term]) -> frozenset:
    out: set = set()
    for tau in upsilon:
        out |= td_expand(g, tau)
    return frozenset(out)


class _Checker:
    def __init__(self, g: Grammar, fuel: Fuel | int, trace: Callable[[str], None] | None):
        self.g = g
        self.fuel = Fuel(fuel) if isinstance(fuel, int) else fuel
        self.trace = trace
        _ensure_stack()

    def emit(self, alt, subject: str, against: str, C: frozenset) -> None:
        if self.trace is not None:
            self.trace(f"td\t{alt}\t{subject}\t{against}\t{len(C)}")

    def term(self, tau: Term, ups: frozenset, C: frozenset) -> bool:
        self.fuel.burn()
        if not ups:
            self.emit(1, str(tau), show_set(ups), C)
            return False
        if any(t == tau and ups >= prior for t, prior in C):
            self.emit(2, str(tau), show_set(ups), C)
            return True
        if isinstance(tau, Sym):
            self.emit(3, str(tau), show_set(ups), C)
            C2 = C | {(tau, ups)}
            return all(self.term(t, ups, C2) for t in sorted(td_expand(self.g, tau), key=str))
        self.emit(4, str(tau), show_set(ups), C)
        matching = frozenset(
            e.args for e in td_expands(self.g, ups) if not isinstance(e, Sym) and e.name == tau.name
        )
        return self.seq(tau.args, matching, C)

    def seq(self, psi: tuple, Psi: frozenset, C: frozenset) -> bool:
        self.fuel.burn()
        self.emit("v", show_seq(psi), show_seqset(Psi), C)
        if not psi:
            # (empty, {}) is covered by neither clause; it is taken as false
            return Psi == frozenset([()])
        return self.term(psi[0], heads(Psi), C) and self.seq(psi[1:], tails(Psi), C)


def _assumptions(C: Iterable[tuple[Term, Iterable[Term]]]) -> frozenset:
    return frozenset((t, frozenset(u)) for t, u in C)


def td_subset_term(
    g: Grammar,
    tau: Term,
    upsilon: Collection[Term],
    C: Iterable[tuple[Term, Iterable[Term]]] = (),
    fuel: Fuel | int = DEFAULT_FUEL,
    trace: Callable[[str], None] | None = None,
) -> bool:
    """Whether the closure of tau is included in the closure of the union of upsilon."""
    return _Checker(g, fuel, trace).term(tau, frozenset(upsilon), _assumptions(C))


def td_subsetv_seq(
    g: Grammar,
    psi: Iterable[Term],
    Psi: Iterable[Iterable[Term]],
    C: Iterable[tuple[Term, Iterable[Term]]] = (),
    fuel: Fuel | int = DEFAULT_FUEL,
    trace: Callable[[str], None] | None = None,
) -> bool:
    psi = tuple(psi)
    Psi = frozenset(tuple(s) for s in Psi)
    if any(len(s) != len(psi) for s in Psi):
        raise ValueError("all sequences must have the length of psi")
    return _Checker(g, fuel, trace).seq(psi, Psi, _assumptions(C))


def td_subset(
    g: Grammar,
    tau1: Term,
    tau2: Term,
    fuel: Fuel | int = DEFAULT_FUEL,
    trace: Callable[[str], None] | None = None,
) -> bool:
    return td_subset_term(g, tau1, [tau2], (), fuel, trace)
