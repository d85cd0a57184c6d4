"""Regular term grammars: representation, file format, emptiness, simplification."""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .terms import IDENT, ParseError, Sym, Term, canonical, parse_term, symbols

__all__ = [
    "EmptyTypeError",
    "Grammar",
    "ParseError",
    "Rule",
    "nonempty_symbols",
    "parse_grammar",
    "render",
    "simplify",
]


class EmptyTypeError(ValueError):
    """A type symbol the caller needs denotes the empty set."""

    def __init__(self, names: Iterable[str]):
        self.names = sorted(names)
        super().__init__("empty type symbol(s): " + ", ".join(self.names))


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class Grammar:
    """The tuple of function symbols (name -> arity), type symbols and rules.

    ``sigma`` is stored as a sorted tuple of ``(name, arity)`` pairs so the
    grammar stays hashable; use :attr:`arity` for lookups.
    """

    sigma: tuple[tuple[str, int], ...]
    pi: frozenset[str]
    delta: frozenset[Rule]
    # Derived property of the rules, so it does not take part in equality.
    simplified: bool = field(default=False, compare=False)

    @classmethod
    def build(
        cls,
        sigma: Mapping[str, int],
        rules: Iterable[Rule | tuple[str, Term]],
        pi: Iterable[str] | None = None,
        simplified: bool = False,
    ) -> Grammar:
        rules = frozenset(r if isinstance(r, Rule) else Rule(*r) for r in rules)
        if pi is None:
            pi = {r.lhs for r in rules}
        g = cls(tuple(sorted(sigma.items())), frozenset(pi), rules, simplified)
        g.validate()
        return g

    @cached_property
    def arity(self) -> dict[str, int]:
        return dict(self.sigma)

    @cached_property
    def constants(self) -> list[str]:
        return sorted(n for n, k in self.sigma if k == 0)

    @cached_property
    def _by_lhs(self) -> dict[str, tuple[Term, ...]]:
        table: dict[str, list[Term]] = defaultdict(list)
        for r in self.delta:
            table[r.lhs].append(r.rhs)
        return {k: tuple(canonical(v)) for k, v in table.items()}

    def rules_for(self, name: str) -> tuple[Term, ...]:
        """Right-hand sides of ``name``'s rules in canonical order."""
        return self._by_lhs.get(name, ())

    def is_type(self, t: Term) -> bool:
        return isinstance(t, Sym)

    def digest(self) -> str:
        return hashlib.sha256(render(self).encode()).hexdigest()[:16]

    def validate(self) -> None:
        names = [n for n, _ in self.sigma]
        if len(set(names)) != len(names):
            raise ParseError("duplicate function symbol")
        if any(k < 0 for _, k in self.sigma):
            raise ParseError("negative arity")
        if not self.constants:
            raise ParseError("signature declares no constant")
        clash = self.pi & set(names)
        if clash:
            raise ParseError(f"names used both as type and function symbols: {', '.join(sorted(clash))}")
        for r in self.delta:
            if r.lhs not in self.pi:
                raise ParseError(f"rule for undeclared type symbol {r.lhs}")
            self.check_term(r.rhs)

    def check_term(self, t: Term) -> None:
        if isinstance(t, Sym):
            if t.name not in self.pi:
                raise ParseError(f"undeclared type symbol {t.name}")
            return
        if self.arity.get(t.name) != len(t.args):
            raise ParseError(f"bad application {t}")
        for a in t.args:
            self.check_term(a)

    def term(self, text: str) -> Term:
        """Parse a pure type term (or ground term) over this grammar."""
        return parse_term(text, self.arity, self.pi)

    def __str__(self) -> str:
        return render(self)


def parse_grammar(text: str) -> Grammar:
    sigma: dict[str, int] = {}
    raw_rules: list[tuple[int, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%sig"):
            for decl in line[4:].split():
                name, sep, k = decl.partition("/")
                if not sep or not IDENT.fullmatch(name) or not k.isdigit():
                    raise ParseError(f"bad signature entry {decl!r}", lineno)
                if name in sigma:
                    raise ParseError(f"function symbol {name} declared twice", lineno)
                sigma[name] = int(k)
            continue
        lhs, arrow, rhs = line.partition("->")
        lhs = lhs.strip()
        if not arrow:
            raise ParseError("expected 'Type -> rhs'", lineno)
        if not IDENT.fullmatch(lhs):
            raise ParseError(f"bad type symbol {lhs!r}", lineno)
        for alt in rhs.split("|"):
            raw_rules.append((lineno, lhs, alt))

    pi = {lhs for _, lhs, _ in raw_rules}
    clash = pi & sigma.keys()
    if clash:
        raise ParseError(f"declared both as type and function symbol: {', '.join(sorted(clash))}")
    if not any(k == 0 for k in sigma.values()):
        raise ParseError("signature declares no constant")
    rules = [Rule(lhs, parse_term(alt, sigma, pi, lineno)) for lineno, lhs, alt in raw_rules]
    return Grammar.build(sigma, rules, pi)


def render(g: Grammar) -> str:
    """Canonical text form; ``parse_grammar(render(g)) == g`` for any unsimplified g."""
    lines = ["%sig " + " ".join(f"{n}/{k}" for n, k in g.sigma)]
    for name in sorted(g.pi):
        rhs = g.rules_for(name)
        if rhs:
            lines.append(f"{name} -> " + " | ".join(str(t) for t in rhs))
    return "\n".join(lines) + "\n"


def nonempty_symbols(g: Grammar) -> frozenset[str]:
    """Least fixpoint: a symbol is nonempty once one of its rules only mentions nonempty symbols."""
    found: set[str] = set()
    pending = [(r.lhs, symbols(r.rhs)) for r in g.delta]
    changed = True
    while changed:
        changed = False
        rest = []
        for lhs, needs in pending:
            if lhs in found:
                continue
            if needs <= found:
                found.add(lhs)
                changed = True
            else:
                rest.append((lhs, needs))
        pending = rest
    return frozenset(found)


def simplify(g: Grammar, roots: Iterable[str] = ()) -> Grammar:
    """Drop empty symbols and their rules, then inline chain rules.

    Raises EmptyTypeError if any of ``roots`` is empty.
    """
    if g.simplified:
        missing = set(roots) - g.pi
        if missing:
            raise EmptyTypeError(missing)
        return g
    live = nonempty_symbols(g)
    dead_roots = set(roots) - live
    if dead_roots:
        raise EmptyTypeError(dead_roots)
    kept = [r for r in g.delta if r.lhs in live and symbols(r.rhs) <= live]

    chains: dict[str, set[str]] = defaultdict(set)
    proper: dict[str, set[Term]] = defaultdict(set)
    for r in kept:
        if isinstance(r.rhs, Sym):
            chains[r.lhs].add(r.rhs.name)
        else:
            proper[r.lhs].add(r.rhs)

    rules = set()
    for name in live:
        seen = {name}
        stack = [name]
        while stack:
            for nxt in chains[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        for reached in seen:
            rules.update(Rule(name, rhs) for rhs in proper[reached])
    return Grammar(g.sigma, live, frozenset(rules), simplified=True)


def is_simplified_form(g: Grammar) -> bool:
    """Check the simplified-grammar conditions directly, ignoring the flag."""
    if any(isinstance(r.rhs, Sym) for r in g.delta):
        return False
    return nonempty_symbols(g) == g.pi


def with_rules(g: Grammar, extra: Iterable[Rule], simplified: bool | None = None) -> Grammar:
    """A copy of ``g`` with more rules (new lhs symbols are added to pi)."""
    extra = frozenset(extra)
    out = Grammar(
        g.sigma,
        g.pi | {r.lhs for r in extra},
        g.delta | extra,
        g.simplified if simplified is None else simplified,
    )
    out.validate()
    return out

