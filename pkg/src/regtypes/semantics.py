"""Ground-term semantics: membership, tuple-distributive membership, enumeration,
and bounded witness search.

Witness search answers "is there a term of depth <= d in the first type but
not in the second" without materialising the (often huge) enumeration.  It
runs a bottom-up subset construction: every ground term is summarised by the
set of states (pure type terms, or closure contexts for the tuple-distributive
case) that accept it, and only the canonically smallest term per summary is
kept.  Because canonical order is compositional, the smallest witness found
this way is exactly the first witness of ``enumerate_terms`` order; the
``method="enumerate"`` path computes the same answer the slow way.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import product
from typing import Collection, Iterable

from .grammar import Grammar, simplify
from .terms import App, Sym, Term, canonical, depth, subterms

__all__ = [
    "EnumerationLimit",
    "closure_member",
    "depth",
    "enumerate_terms",
    "find_regular_counterexample",
    "find_td_counterexample",
    "member",
    "member_td",
]


class EnumerationLimit(RuntimeError):
    """Raised when an enumeration would exceed the caller's size limit."""


def member(g: Grammar, t: App, tau: Term) -> bool:
    """Whether ``tau`` derives the ground term ``t``."""
    memo: dict[tuple[Term, Term], bool] = {}

    def go(t: App, tau: Term) -> bool:
        key = (t, tau)
        if key in memo:
            return memo[key]
        memo[key] = False  # guards chain cycles in unsimplified input
        if isinstance(tau, Sym):
            result = any(go(t, rhs) for rhs in g.rules_for(tau.name))
        else:
            result = tau.name == t.name and all(go(a, s) for a, s in zip(t.args, tau.args))
        memo[key] = result
        return result

    return go(t, tau)


def _roots(g: Grammar, terms: Iterable[Term]) -> list[App]:
    """Rewrite type symbols until every root is a function symbol."""
    out: list[App] = []
    seen: set[Term] = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        if isinstance(t, Sym):
            stack.extend(g.rules_for(t.name))
        else:
            out.append(t)
    return out


def member_td(g: Grammar, t: App, upsilon: Collection[Term]) -> bool:
    """Whether ``t`` lies in the tuple-distributive closure of the union of ``upsilon``."""
    memo: dict[tuple[App, frozenset], bool] = {}

    def go(t: App, ups: frozenset) -> bool:
        key = (t, ups)
        if key not in memo:
            same = [e for e in _roots(g, ups) if e.name == t.name]
            memo[key] = bool(same) and all(
                go(arg, frozenset(e.args[i] for e in same)) for i, arg in enumerate(t.args)
            )
        return memo[key]

    return go(t, frozenset(upsilon))


def closure_member(s: Collection[App], t: App) -> bool:
    """Membership of ``t`` in the tuple-distributive closure of a finite ground set ``s``.

    Straight from the definition: a constant must itself be in ``s``; an
    application needs each argument in the closure of the matching projection.
    """
    same = [u for u in s if u.name == t.name]
    if not same:
        return False
    return all(
        closure_member({u.args[i] for u in same}, arg) for i, arg in enumerate(t.args)
    )


# -- enumeration -------------------------------------------------------------


@lru_cache(maxsize=64)
def _levels(g: Grammar, d: int, limit: int | None) -> tuple[dict[str, frozenset], ...]:
    """levels[k][alpha] = terms of alpha with depth <= k, for k = 0..d."""
    levels: list[dict[str, frozenset]] = [{name: frozenset() for name in g.pi}]
    chains = {name: [r.name for r in g.rules_for(name) if isinstance(r, Sym)] for name in g.pi}
    for k in range(1, d + 1):
        cur: dict[str, set] = {}
        for name in g.pi:
            acc: set = set()
            for rhs in g.rules_for(name):
                if isinstance(rhs, App):
                    # children only consult levels < k, which already exist
                    acc |= _instances(rhs, k, levels, limit)
            cur[name] = acc
        # chain rules stay at the same depth: propagate to a fixpoint
        changed = True
        while changed:
            changed = False
            for name in g.pi:
                for other in chains[name]:
                    if not cur[other] <= cur[name]:
                        cur[name] |= cur[other]
                        changed = True
        for name, terms in cur.items():
            if limit is not None and len(terms) > limit:
                raise EnumerationLimit(f"{name} has more than {limit} terms of depth <= {k}")
        levels.append({name: frozenset(v) for name, v in cur.items()})
    return tuple(levels)


def enumerate_terms(g: Grammar, tau: Term, d: int, limit: int | None = None) -> list[App]:
    """All ground terms of ``tau`` with depth <= d, in canonical order."""
    if d < 1:
        return []
    levels = _levels(g, d, limit)
    return canonical(_instances(tau, d, levels, limit))


def _instances(tau: Term, k: int, levels, limit) -> frozenset:
    if k < 1:
        return frozenset()
    if isinstance(tau, Sym):
        return levels[k][tau.name]
    if not tau.args:
        return frozenset([tau])
    choices = [_instances(a, k - 1, levels, limit) for a in tau.args]
    size = 1
    for c in choices:
        size *= len(c)
    if limit is not None and size > limit:
        raise EnumerationLimit(f"instances of {tau} exceed {limit}")
    return frozenset(App(tau.name, combo) for combo in product(*choices))


# -- bounded witness search --------------------------------------------------


class _RegularStates:
    """Pure type terms reachable from the roots; a term's summary is the set accepting it."""

    def __init__(self, g: Grammar, roots: Iterable[Term]):
        states: set[Term] = set()
        stack = list(roots)
        while stack:
            t = stack.pop()
            for s in subterms(t):
                if s not in states:
                    states.add(s)
                    if isinstance(s, Sym):
                        stack.extend(g.rules_for(s.name))
        self.by_name: dict[str, list[App]] = defaultdict(list)
        self.owners: dict[App, list[Sym]] = defaultdict(list)
        for s in states:
            if isinstance(s, App):
                self.by_name[s.name].append(s)
            else:
                for rhs in g.rules_for(s.name):
                    self.owners[rhs].append(s)
        # relevant child states per (function symbol, argument position)
        self.relevant = {
            (f, i): frozenset(q.args[i] for q in qs)
            for f, qs in self.by_name.items()
            for i in range(len(qs[0].args))
        }

    def step(self, f: str, children: tuple[frozenset, ...]) -> frozenset:
        out: set[Term] = set()
        for q in self.by_name.get(f, ()):
            if all(a in c for a, c in zip(q.args, children)):
                out.add(q)
                out.update(self.owners.get(q, ()))
        return frozenset(out)


class _ClosureStates:
    """Sets of pure type terms reachable from ``{root}`` by expansion and projection.

    A ground term's summary is the set of those contexts whose
    tuple-distributive closure contains it.
    """

    def __init__(self, g: Grammar, root: Term):
        self.g = g
        self.start = frozenset([root])
        self.moves: dict[tuple[frozenset, str], tuple[frozenset, ...]] = {}
        seen = {self.start}
        stack = [self.start]
        while stack:
            ups = stack.pop()
            grouped: dict[str, list[App]] = defaultdict(list)
            for e in _roots(g, ups):
                grouped[e.name].append(e)
            for f, es in grouped.items():
                kids = tuple(frozenset(e.args[i] for e in es) for i in range(len(es[0].args)))
                self.moves[ups, f] = kids
                for k in kids:
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
        self.by_name: dict[str, list[tuple[frozenset, tuple]]] = defaultdict(list)
        for (ups, f), kids in self.moves.items():
            self.by_name[f].append((ups, kids))
        self.relevant = {}
        for f, entries in self.by_name.items():
            for i in range(len(entries[0][1])):
                self.relevant[f, i] = frozenset(kids[i] for _, kids in entries)

    def step(self, f: str, children: tuple[frozenset, ...]) -> frozenset:
        return frozenset(
            ups
            for ups, kids in self.by_name.get(f, ())
            if all(k in c for k, c in zip(kids, children))
        )


def _search(g: Grammar, tau1: Term, tau2: Term, d: int, closure: bool) -> App | None:
    if closure:
        regular = _RegularStates(g, [tau1])
        other = _ClosureStates(g, tau2)
        rejects = lambda sig: other.start not in sig[1]  # noqa: E731
    else:
        regular = _RegularStates(g, [tau1, tau2])
        other = None
        rejects = lambda sig: tau2 not in sig[0]  # noqa: E731

    autos = [regular] if other is None else [regular, other]

    def step(f: str, child_sigs: tuple) -> tuple:
        sig = tuple(
            a.step(f, tuple(cs[j] for cs in child_sigs)) for j, a in enumerate(autos)
        )
        return sig if other is not None else (sig[0], frozenset())

    def project(sig: tuple, f: str, i: int) -> tuple:
        return tuple(
            (sig[j] & a.relevant.get((f, i), frozenset())) for j, a in enumerate(autos)
        )

    reps: dict[tuple, App] = {}
    for _ in range(d):
        new = dict(reps)

        def offer(sig: tuple, t: App) -> None:
            old = new.get(sig)
            if old is None or str(t) < str(old):
                new[sig] = t

        for f, n in g.sigma:
            if n == 0:
                offer(step(f, ()), App(f))
                continue
            columns = []
            for i in range(n):
                col: dict[tuple, App] = {}
                for sig, t in reps.items():
                    p = project(sig, f, i)
                    if p not in col or str(t) < str(col[p]):
                        col[p] = t
                columns.append(list(col.items()))
            for combo in product(*columns):
                sig = step(f, tuple(p for p, _ in combo))
                offer(sig, App(f, tuple(t for _, t in combo)))
        if new == reps:
            break
        reps = new

    witnesses = [t for sig, t in reps.items() if tau1 in sig[0] and rejects(sig)]
    return min(witnesses, key=str, default=None)


def find_regular_counterexample(
    g: Grammar, tau1: Term, tau2: Term, d: int, method: str = "search"
) -> App | None:
    """First term (canonical order) of depth <= d in tau1 but not in tau2.

    ``None`` means no witness up to depth ``d``: inconclusive, not a proof
    of inclusion.
    """
    g = simplify(g)
    if method == "enumerate":
        return next((t for t in enumerate_terms(g, tau1, d) if not member(g, t, tau2)), None)
    return _search(g, tau1, tau2, d, closure=False)


def find_td_counterexample(
    g: Grammar, tau1: Term, tau2: Term, d: int, method: str = "search"
) -> App | None:
    """First term of depth <= d in tau1 outside the tuple-distributive closure of tau2."""
    g = simplify(g)
    if method == "enumerate":
        return next(
            (t for t in enumerate_terms(g, tau1, d) if not member_td(g, t, [tau2])), None
        )
    return _search(g, tau1, tau2, d, closure=True)
