"""Random grammars, inclusion instances and differential runs of dz / td / oracles."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Iterable

from . import builtin
from .dartzobel import DEFAULT_FUEL, FuelExhausted, dz_subset
from .grammar import Grammar, Rule, simplify, with_rules
from .semantics import find_regular_counterexample, find_td_counterexample
from .tdsubset import td_subset
from .terms import App, Sym, Term

LABELS = (
    "agree-include",
    "agree-exclude",
    "dz-unsound-regular",
    "dz-td-mismatch",
    "incomplete-suspect",
    "fuel-exhausted",
)

_CONSTANTS = "abcde"
_FUNCTIONS = "fghkm"
_TYPES = "ABCDE"


@dataclass(frozen=True)
class GenConfig:
    max_type_symbols: int = 5
    max_function_symbols: int = 5
    max_arity: int = 3
    max_rules: int = 3
    max_rhs_depth: int = 2
    seed: int = 0

    def __post_init__(self):
        for name in ("max_type_symbols", "max_rules", "max_rhs_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_function_symbols < 2:
            raise ValueError("max_function_symbols must be at least 2")
        if not 0 <= self.max_arity <= 3:
            raise ValueError("max_arity must be between 0 and 3")


# small arities are favoured to keep oracle searches cheap
_ARITY_WEIGHTS = {0: 3, 1: 3, 2: 3, 3: 1}


def _random_rhs(rng: random.Random, sigma: dict[str, int], types: list[str], budget: int) -> App:
    """A function-rooted term of depth <= budget (type symbols count as depth 1)."""
    funcs = sorted(sigma)
    f = rng.choice(funcs)
    return App(f, tuple(_random_arg(rng, sigma, types, budget - 1) for _ in range(sigma[f])))


def _random_arg(rng, sigma, types, budget) -> Term:
    if budget > 1 and rng.random() < 0.25:
        nonconst = sorted(n for n, k in sigma.items() if k > 0)
        if nonconst:
            f = rng.choice(nonconst)
            return App(f, tuple(_random_arg(rng, sigma, types, budget - 1) for _ in range(sigma[f])))
    if rng.random() < 0.65:
        return Sym(rng.choice(types))
    return App(rng.choice(sorted(n for n, k in sigma.items() if k == 0)))


def gen_grammar(cfg: GenConfig) -> Grammar:
    """A simplified grammar where every type symbol is nonempty; deterministic in ``cfg``."""
    rng = random.Random(cfg.seed)
    while True:
        nfun = rng.randint(2, min(cfg.max_function_symbols, len(_CONSTANTS)))
        arities = [0] + [
            rng.choices(
                [k for k in _ARITY_WEIGHTS if k <= cfg.max_arity],
                [w for k, w in _ARITY_WEIGHTS.items() if k <= cfg.max_arity],
            )[0]
            for _ in range(nfun - 1)
        ]
        sigma: dict[str, int] = {}
        consts = iter(_CONSTANTS)
        funcs = iter(_FUNCTIONS)
        for k in arities:
            sigma[next(consts) if k == 0 else next(funcs)] = k
        types = list(_TYPES[: rng.randint(1, min(cfg.max_type_symbols, len(_TYPES)))])
        rules = [
            Rule(name, _random_rhs(rng, sigma, types, cfg.max_rhs_depth))
            for name in types
            for _ in range(rng.randint(1, cfg.max_rules))
        ]
        g = simplify(Grammar.build(sigma, rules, types))
        if g.pi:
            return g


def _fresh(g: Grammar, base: str) -> str:
    taken = g.pi | set(g.arity)
    name = base + "_sup"
    k = 1
    while name in taken:
        k += 1
        name = f"{base}_sup{k}"
    return name


def gen_inclusion_pair(
    cfg: GenConfig,
    base: Grammar | None = None,
    tau1: str | None = None,
    extras: int | None = None,
) -> tuple[Grammar, Sym, Sym]:
    """A grammar with a fresh symbol whose rules contain all of tau1's, so tau1 <= tau2."""
    g = base if base is not None else gen_grammar(cfg)
    g = simplify(g)
    rng = random.Random(f"inclusion-{cfg.seed}")
    if tau1 is None:
        tau1 = rng.choice(sorted(g.pi))
    sup = _fresh(g, tau1)
    rules = [Rule(sup, rhs) for rhs in g.rules_for(tau1)]
    if extras is None:
        extras = rng.randint(0, cfg.max_rules)
    types = sorted(g.pi | {sup})
    rules += [Rule(sup, _random_rhs(rng, g.arity, types, cfg.max_rhs_depth)) for _ in range(extras)]
    return with_rules(g, rules, simplified=True), Sym(tau1), Sym(sup)


@dataclass(frozen=True)
class TrialReport:
    index: int
    seed: int
    digest: str
    grammar: str
    tau1: str
    tau2: str
    dz: bool | None
    td: bool | None
    depth: int
    regular_witness: str | None
    td_witness: str | None
    label: str
    error: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> TrialReport:
        return cls(**json.loads(line))


def classify(dz: bool | None, td: bool | None, regular_witness, td_witness) -> str:
    if dz is None or td is None:
        return "fuel-exhausted"
    if dz != td:
        return "dz-td-mismatch"
    if dz:
        return "dz-unsound-regular" if regular_witness is not None else "agree-include"
    return "agree-exclude" if td_witness is not None else "incomplete-suspect"


def run_instance(
    g: Grammar,
    tau1: Term,
    tau2: Term,
    depth: int,
    fuel: int = DEFAULT_FUEL,
    index: int = 0,
    seed: int = 0,
) -> TrialReport:
    errors = []
    try:
        dz = dz_subset(g, tau1, tau2, fuel=fuel)
    except FuelExhausted as exc:
        dz = None
        errors.append(f"dz: {exc}")
    try:
        td = td_subset(g, tau1, tau2, fuel=fuel)
    except FuelExhausted as exc:
        td = None
        errors.append(f"td: {exc}")
    reg = find_regular_counterexample(g, tau1, tau2, depth)
    tdw = find_td_counterexample(g, tau1, tau2, depth)
    return TrialReport(
        index=index,
        seed=seed,
        digest=g.digest(),
        grammar=str(g),
        tau1=str(tau1),
        tau2=str(tau2),
        dz=dz,
        td=td,
        depth=depth,
        regular_witness=None if reg is None else str(reg),
        td_witness=None if tdw is None else str(tdw),
        label=classify(dz, td, reg, tdw),
        error="; ".join(errors) or None,
    )


def trial_instance(cfg: GenConfig, index: int) -> tuple[Grammar, Sym, Sym, int]:
    """The (grammar, tau1, tau2) used for trial ``index``, plus its seed."""
    seed = cfg.seed + index
    g = gen_grammar(replace(cfg, seed=seed))
    rng = random.Random(f"pair-{seed}")
    names = sorted(g.pi)
    return g, Sym(rng.choice(names)), Sym(rng.choice(names)), seed


def _run_one(args) -> TrialReport:
    cfg, index, depth, fuel, inject = args
    if inject and index == 0:
        return run_instance(builtin.skewed(), Sym("alpha"), Sym("beta"), depth, fuel, 0, cfg.seed)
    g, t1, t2, seed = trial_instance(cfg, index)
    return run_instance(g, t1, t2, depth, fuel, index, seed)


def run_trials(
    cfg: GenConfig,
    n: int,
    depth: int,
    fuel: int = DEFAULT_FUEL,
    inject_example: bool = False,
    workers: int = 1,
) -> list[TrialReport]:
    """``n`` reports in trial order; with ``inject_example`` trial 0 is the skewed-tree instance."""
    if n < 1:
        raise ValueError("need at least one trial")
    jobs = [(cfg, i, depth, fuel, inject_example) for i in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_one, jobs, chunksize=16))
    return [_run_one(j) for j in jobs]


def write_jsonl(reports: Iterable[TrialReport], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in reports:
            fh.write(r.to_json() + "\n")


def summarize(reports: Iterable[TrialReport]) -> dict[str, int]:
    counts = dict.fromkeys(LABELS, 0)
    for r in reports:
        counts[r.label] += 1
    return counts
