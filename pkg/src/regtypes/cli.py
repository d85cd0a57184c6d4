"""Command-line front end.

Exit status: 0 inclusion holds / success, 1 inclusion refuted / property
false, 2 usage or input error, 3 fuel exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dartzobel import DEFAULT_FUEL, FuelExhausted, dz_subset
from .grammar import EmptyTypeError, Grammar, ParseError, parse_grammar, render, simplify
from .harness import GenConfig, run_trials, summarize, write_jsonl
from .semantics import (
    enumerate_terms,
    find_regular_counterexample,
    find_td_counterexample,
    member,
    member_td,
)
from .tdsubset import td_subset
from .terms import is_ground, symbols

OK, REFUTED, USAGE, FUEL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _load(path: str, *term_texts: str):
    """Read, simplify and parse terms against the grammar at ``path``."""
    g = parse_grammar(Path(path).read_text(encoding="utf-8"))
    terms = [g.term(t) for t in term_texts]
    roots = set().union(*(symbols(t) for t in terms)) if terms else set()
    return simplify(g, roots), terms


def _check(args) -> int:
    g, (t1, t2) = _load(args.grammar, args.tau1, args.tau2)
    trace_lines: list[str] = []
    trace = trace_lines.append if args.trace else None
    witness = None
    try:
        if args.algo == "dz":
            result = dz_subset(g, t1, t2, fuel=args.fuel, trace=trace)
        elif args.algo == "td":
            result = td_subset(g, t1, t2, fuel=args.fuel, trace=trace)
        else:
            find = find_regular_counterexample if args.algo == "oracle" else find_td_counterexample
            witness = find(g, t1, t2, args.depth)
            result = "inconclusive" if witness is None else False
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return FUEL
    finally:
        if args.trace:
            Path(args.trace).write_text("".join(line + "\n" for line in trace_lines), encoding="utf-8")

    if args.json:
        payload = {"result": result, "witness": None if witness is None else str(witness), "algo": args.algo}
        print(json.dumps(payload, ensure_ascii=False))
    elif result == "inconclusive":
        print("inconclusive")
    else:
        print("true" if result else "false")
        if witness is not None:
            print(f"witness: {witness}")
    if result == "inconclusive":
        return USAGE if args.strict else OK
    return OK if result else REFUTED


def _member(args) -> int:
    g, terms = _load(args.grammar, args.term, *args.tau)
    t, taus = terms[0], terms[1:]
    if not is_ground(t):
        raise ParseError(f"{t} is not a ground term")
    if args.td:
        result = member_td(g, t, taus)
    else:
        if len(taus) != 1:
            raise ParseError("exact membership takes exactly one type term (use --td for a set)")
        result = member(g, t, taus[0])
    print("true" if result else "false")
    return OK if result else REFUTED


def _enum(args) -> int:
    g, (tau,) = _load(args.grammar, args.tau)
    for t in enumerate_terms(g, tau, args.depth):
        print(t)
    return OK


def _simplify(args) -> int:
    g = parse_grammar(Path(args.grammar).read_text(encoding="utf-8"))
    sys.stdout.write(render(simplify(g, args.root or ())))
    return OK


def _fuzz(args) -> int:
    cfg = GenConfig(seed=args.seed)
    reports = run_trials(
        cfg, args.trials, args.depth, fuel=args.fuel,
        inject_example=args.inject_example, workers=args.workers,
    )
    if args.out:
        write_jsonl(reports, args.out)
    counts = summarize(reports)
    for label, n in counts.items():
        print(f"{label}\t{n}")
    if counts["fuel-exhausted"]:
        return FUEL
    return REFUTED if counts["dz-td-mismatch"] else OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regtypes", description="Inclusion and membership for regular types.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="test whether TAU1 is included in TAU2")
    c.add_argument("--algo", choices=["dz", "td", "oracle", "td-oracle"], default="dz")
    c.add_argument("--depth", type=int, default=6, help="oracle search depth")
    c.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    c.add_argument("--trace", metavar="FILE", help="write one line per recursive call")
    c.add_argument("--json", action="store_true")
    c.add_argument("--strict", action="store_true", help="treat an inconclusive oracle as an error")
    c.add_argument("grammar")
    c.add_argument("tau1")
    c.add_argument("tau2")
    c.set_defaults(func=_check)

    m = sub.add_parser("member", help="test whether a ground term belongs to a type")
    m.add_argument("--td", action="store_true", help="use the tuple-distributive closure of the union of TAU")
    m.add_argument("grammar")
    m.add_argument("term")
    m.add_argument("tau", nargs="+")
    m.set_defaults(func=_member)

    e = sub.add_parser("enum", help="list ground terms of a type up to a depth")
    e.add_argument("--depth", type=int, default=3)
    e.add_argument("grammar")
    e.add_argument("tau")
    e.set_defaults(func=_enum)

    s = sub.add_parser("simplify", help="print the simplified grammar")
    s.add_argument("--root", action="append", help="type symbol that must stay nonempty")
    s.add_argument("grammar")
    s.set_defaults(func=_simplify)

    f = sub.add_parser("fuzz", help="differential run of dz, td and the oracles")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--trials", type=int, default=100)
    f.add_argument("--depth", type=int, default=6)
    f.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    f.add_argument("--out", metavar="FILE")
    f.add_argument("--inject-example", action="store_true", help="make trial 0 the skewed-tree instance")
    f.add_argument("--workers", type=int, default=1)
    f.set_defaults(func=_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("depth", "fuel", "trials"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"regtypes: error: --{name} must be positive", file=sys.stderr)
            return USAGE
    try:
        return args.func(args)
    except (ParseError, EmptyTypeError, OSError, ValueError) as exc:
        print(f"regtypes: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
