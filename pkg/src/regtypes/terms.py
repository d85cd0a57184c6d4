"""Term representation shared by grammars, algorithms and oracles.

Two node kinds exist: ``Sym`` for a type symbol (a nonterminal leaf) and
``App`` for a function symbol applied to its arguments.  A ground term is
an ``App`` tree without any ``Sym``.

The printed form is the canonical syntax (``cons(s(0),nil)``).  Sorting by
the printed form is the canonical order used for every rendered set.
Identifiers are restricted to word characters, so every delimiter sorts
below every identifier character; this makes string order agree with
"compare root names, then children left to right".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

IDENT = re.compile(r"\w+")


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class App:
    name: str
    args: tuple[Term, ...] = ()
    _text: str = field(default="", init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.args:
            text = f"{self.name}({','.join(str(a) for a in self.args)})"
        else:
            text = self.name
        object.__setattr__(self, "_text", text)

    def __str__(self) -> str:
        return self._text

    # Printed form identifies an App uniquely; comparing it avoids deep walks.
    def __eq__(self, other):
        return isinstance(other, App) and self._text == other._text

    def __hash__(self) -> int:
        return hash(self._text)

    @property
    def arity(self) -> int:
        return len(self.args)


Term = Union[Sym, App]
Seq = tuple  # tuple[Term, ...]; the empty tuple is the empty sequence


def is_ground(t: Term) -> bool:
    if isinstance(t, Sym):
        return False
    return all(is_ground(a) for a in t.args)


def depth(t: Term) -> int:
    """Constants (and type symbols) have depth 1."""
    if isinstance(t, Sym) or not t.args:
        return 1
    return 1 + max(depth(a) for a in t.args)


def symbols(t: Term) -> set[str]:
    """Type symbol names occurring in ``t``."""
    if isinstance(t, Sym):
        return {t.name}
    out: set[str] = set()
    for a in t.args:
        out |= symbols(a)
    return out


def subterms(t: Term) -> Iterable[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def canonical(items: Iterable) -> list:
    """Sort terms (or anything with a canonical ``str``) by printed form."""
    return sorted(items, key=str)


def show_seq(seq: Seq) -> str:
    return "<" + ",".join(str(t) for t in seq) + ">"


def show_seqset(seqs: Iterable[Seq]) -> str:
    return "{" + ",".join(sorted(show_seq(s) for s in seqs)) + "}"


def show_set(terms: Iterable[Term]) -> str:
    return "{" + ",".join(sorted(str(t) for t in terms)) + "}"


class ParseError(ValueError):
    """Malformed grammar or term text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_TOKEN = re.compile(r"\s*(?:(\w+)|(.))")


def _tokens(text: str, line: int | None) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        ident, punct = m.groups()
        if ident is None and punct not in "(),":
            raise ParseError(f"unexpected character {punct!r}", line)
        out.append(ident or punct)
        pos = m.end()
    return out


def parse_term(
    text: str,
    sigma: Mapping[str, int],
    pi: Iterable[str] = (),
    line: int | None = None,
) -> Term:
    """Parse a pure type term in prefix syntax.

    Names in ``sigma`` become ``App`` nodes (arity checked), names in ``pi``
    become ``Sym`` leaves; anything else is an undeclared symbol.
    """
    pi = set(pi)
    toks = _tokens(text, line)
    if not toks:
        raise ParseError("empty term", line)
    pos = 0

    def term() -> Term:
        nonlocal pos
        if pos >= len(toks) or not IDENT.fullmatch(toks[pos]):
            got = toks[pos] if pos < len(toks) else "end of input"
            raise ParseError(f"expected identifier, got {got!r}", line)
        name = toks[pos]
        pos += 1
        args: list[Term] = []
        if pos < len(toks) and toks[pos] == "(":
            pos += 1
            args.append(term())
            while pos < len(toks) and toks[pos] == ",":
                pos += 1
                args.append(term())
            if pos >= len(toks) or toks[pos] != ")":
                raise ParseError(f"missing ')' after arguments of {name}", line)
            pos += 1
        if name in pi:
            if args:
                raise ParseError(f"type symbol {name} takes no arguments", line)
            return Sym(name)
        if name not in sigma:
            raise ParseError(f"undeclared symbol {name}", line)
        if len(args) != sigma[name]:
            raise ParseError(
                f"{name} has arity {sigma[name]} but is applied to {len(args)} argument(s)",
                line,
            )
        return App(name, tuple(args))

    result = term()
    if pos != len(toks):
        raise ParseError(f"trailing input {' '.join(toks[pos:])!r}", line)
    return result
