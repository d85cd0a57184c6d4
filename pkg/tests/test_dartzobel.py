import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import GOLDEN
from regtypes.dartzobel import (
    Fuel,
    FuelExhausted,
    dz_subset,
    dz_subsetv,
    expand_seq,
    expands_set,
    open_seq,
    opens_set,
    selects,
)
from regtypes.grammar import parse_grammar, simplify
from regtypes.harness import GenConfig, gen_inclusion_pair
from regtypes.semantics import find_regular_counterexample
from regtypes.terms import App, Sym
from strategies import grammars

a, b = App("a"), App("b")


def T(g, text):
    return g.term(text)


def seqs(g, *texts):
    """Sequences written as comma-free lists of term texts, e.g. seqs(g, ["a"], ["b"])."""
    return frozenset(tuple(T(g, x) for x in s) for s in texts)


def test_expand_seq(sk, nat, S):
    assert expand_seq(sk, (T(sk, "g(omega)"),)) == seqs(sk, ["g(omega)"])
    assert expand_seq(nat, (S("Nat"),)) == seqs(nat, ["0"], ["s(Nat)"])
    assert expand_seq(sk, (S("omega"),)) == seqs(sk, ["a"], ["b"], ["h(omega,a)"], ["h(omega,b)"])
    assert expand_seq(sk, (S("omega"), a)) == seqs(
        sk, ["a", "a"], ["b", "a"], ["h(omega,a)", "a"], ["h(omega,b)", "a"]
    )


def test_expands_set(sk, S):
    assert expands_set(sk, seqs(sk, ["beta"])) == seqs(sk, ["g(theta)"], ["g(sigma)"])
    assert expands_set(sk, frozenset()) == frozenset()
    done = seqs(sk, ["g(theta)"], ["g(sigma)"])
    assert expands_set(sk, done) == done


def test_selects(sk):
    assert selects(a, seqs(sk, ["a"], ["b"])) == seqs(sk, ["a"])
    both = seqs(sk, ["g(theta)"], ["g(sigma)"])
    assert selects(T(sk, "g(omega)"), both) == both
    assert selects(T(sk, "h(omega,a)"), seqs(sk, ["g(theta)"])) == frozenset()
    with pytest.raises(ValueError):
        selects(Sym("omega"), both)
    with pytest.raises(ValueError):
        selects(a, seqs(sk, ["theta"]))


def test_open(sk):
    assert open_seq((T(sk, "g(omega)"),)) == (Sym("omega"),)
    assert open_seq((T(sk, "h(omega,a)"),)) == (Sym("omega"), a)
    assert open_seq((a,)) == ()
    assert opens_set(seqs(sk, ["g(theta)"], ["g(sigma)"])) == seqs(sk, ["theta"], ["sigma"])
    assert opens_set(frozenset()) == frozenset()
    assert opens_set(seqs(sk, ["a"])) == frozenset([()])
    with pytest.raises(ValueError):
        open_seq((Sym("omega"),))


def test_subsetv_examples(sk, S):
    C1 = [(S("alpha"), {S("beta")}), (S("omega"), {S("theta"), S("sigma")})]
    assert dz_subsetv(sk, (S("alpha"),), [(S("beta"),)])
    assert dz_subsetv(sk, (), [()])
    assert dz_subsetv(sk, (), [()], C1)
    assert dz_subsetv(sk, (a,), [(S("theta"),), (S("sigma"),)], C1)
    assert not dz_subsetv(sk, (b,), [(S("theta"),)])
    assert not dz_subsetv(sk, (a,), [])


def test_subset_examples(sk, nat, S):
    assert dz_subset(sk, S("alpha"), S("beta"))
    assert dz_subset(nat, S("Nat"), S("Nat"))
    assert not dz_subset(sk, S("omega"), S("theta"))
    assert str(find_regular_counterexample(sk, S("omega"), S("theta"), 3)) == "b"


def test_known_unsoundness_is_preserved(sk, S):
    assert dz_subset(sk, S("alpha"), S("beta"))
    assert find_regular_counterexample(sk, S("alpha"), S("beta"), 4) is not None


def test_golden_trace(sk, S):
    lines = []
    assert dz_subset(sk, S("alpha"), S("beta"), trace=lines.append)
    golden = (GOLDEN / "ex41_dz_trace.tsv").read_text().splitlines()
    assert lines == golden
    assert [line.split("\t")[1] for line in lines[:3]] == ["4", "5", "4"]


def test_flipped_assumption_test_changes_answers():
    # with the subset test, heads {B} discharges the assumption recorded for A
    g = simplify(parse_grammar("%sig a/0 b/0 f/2\nA -> a | f(A,A)\nB -> b | f(B,B)\nU -> f(A,B)"))
    A, B = Sym("A"), Sym("B")
    assert not dz_subset(g, A, B)
    psi = (A, A)
    Psi = [(A, B), (B, B)]
    C = [(A, {A, B})]
    assert dz_subsetv(g, psi, Psi, C) != dz_subsetv(g, psi, Psi, C, flipped_assumption_test=True)


def test_fuel_exhaustion(sk, S):
    with pytest.raises(FuelExhausted):
        dz_subset(sk, S("alpha"), S("beta"), fuel=5)
    fuel = Fuel(1000)
    dz_subset(sk, S("alpha"), S("beta"), fuel=fuel)
    assert fuel.used == 12  # three repeated calls are answered from the cache
    fuel = Fuel(1000)
    dz_subset(sk, S("alpha"), S("beta"), fuel=fuel, trace=lambda line: None)
    assert fuel.used == 15
    with pytest.raises(ValueError):
        Fuel(0)


def test_length_mismatch_rejected(sk, S):
    with pytest.raises(ValueError):
        dz_subsetv(sk, (a,), [(a, a)])


def test_even_lists():
    # Example 1 extended: lists of even naturals are included in lists of naturals
    g = simplify(parse_grammar(
        "%sig 0/0 s/1 nil/0 cons/2\n"
        "Nat -> 0 | s(Nat)\nEven -> 0 | s(s(Even))\n"
        "Natlist -> nil | cons(Nat,Natlist)\nEvenlist -> nil | cons(Even,Evenlist)\n"
    ))
    assert dz_subset(g, Sym("Evenlist"), Sym("Natlist"))
    assert not dz_subset(g, Sym("Natlist"), Sym("Evenlist"))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_complete_on_constructed_inclusions(seed):
    g, t1, t2 = gen_inclusion_pair(GenConfig(seed=seed))
    assert dz_subset(g, t1, t2)


@settings(max_examples=200, deadline=None)
@given(grammars(), st.data())
def test_false_answers_have_regular_witnesses(g, data):
    g = simplify(g)
    assume(g.pi)
    names = sorted(g.pi)
    t1 = Sym(data.draw(st.sampled_from(names)))
    t2 = Sym(data.draw(st.sampled_from(names)))
    if not dz_subset(g, t1, t2):
        # completeness: a false answer means inclusion fails, so a witness exists
        assert find_regular_counterexample(g, t1, t2, 8) is not None


@settings(max_examples=200, deadline=None)
@given(grammars(), st.data(), st.booleans())
def test_cached_run_matches_replayed_run(g, data, flipped):
    # without a trace, answers are cached and redundant assumptions pruned
    g = simplify(g)
    assume(g.pi)
    names = sorted(g.pi)
    t1 = Sym(data.draw(st.sampled_from(names)))
    t2 = Sym(data.draw(st.sampled_from(names)))
    replayed = dz_subset(g, t1, t2, trace=lambda line: None, flipped_assumption_test=flipped)
    assert dz_subset(g, t1, t2, flipped_assumption_test=flipped) == replayed


def test_pruning_keeps_most_general_assumption(S):
    from regtypes.dartzobel import _add_assumption

    A, B = S("A"), S("B")
    wide, narrow = frozenset({A, B}), frozenset({A})

    def sup(hs, ups):
        return hs >= ups

    C = _add_assumption(frozenset(), A, wide, sup)
    assert _add_assumption(C, A, narrow, sup) == {(A, narrow)}
    assert _add_assumption(frozenset({(A, narrow)}), A, wide, sup) == {(A, narrow)}
    assert _add_assumption(C, B, narrow, sup) == {(A, wide), (B, narrow)}
