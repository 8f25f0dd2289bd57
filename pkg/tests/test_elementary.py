import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from posetchoice.cf import check_heredity, constant_cf, empty_cf, enumerate_conservative, is_conservative
from posetchoice.corpus import antichain, posets_up_to
from posetchoice.elementary import ACSequence, Sequence, elementary_cf, eval_elementary, first_hit, is_compatible
from posetchoice.errors import NotAntichain, NotIdeal, PosetMismatch, RepeatedElement, UnknownElement
from strategies import poset_and_sequence


def test_first_hit(p2a, c2):
    assert first_hit(p2a, "a,b", ["b"]) == 2
    assert first_hit(p2a, "a,b", []) is None
    assert first_hit(c2, ["y"], ["x"]) is None
    assert first_hit(c2, [], ["x"]) is None


def test_eval_examples(p2a, c2):
    assert eval_elementary(p2a, "a,b", ["a", "b"]).names == ("a",)
    assert eval_elementary(p2a, "a,b", ["b"]).names == ("b",)
    assert eval_elementary(c2, ["y"], ["x"]).names == ("x",)


def test_eval_errors(c2):
    with pytest.raises(UnknownElement):
        eval_elementary(c2, ["q"], ["x"])
    with pytest.raises(NotIdeal):
        eval_elementary(c2, ["x"], ["y"])


def test_sequence_validation(c2, p2a):
    with pytest.raises(RepeatedElement):
        Sequence(c2, ["x", "x"])
    with pytest.raises(NotAntichain):
        ACSequence(c2, ["x", "y"])
    assert ACSequence(p2a, ["b", "a"]).items == ("b", "a")
    assert Sequence.parse(p2a, " a , b ").items == ("a", "b")
    assert Sequence(c2, ["y", "x"]).is_ac is False


def test_elementary_tables(p2a, vee):
    assert elementary_cf(p2a, ["a"]) == constant_cf(p2a, ["a"])
    assert oracles.as_table(elementary_cf(p2a, "a,b")) == {
        frozenset(): frozenset(),
        frozenset("a"): frozenset("a"),
        frozenset("b"): frozenset("b"),
        frozenset("ab"): frozenset("a"),
    }
    assert elementary_cf(vee, []) == empty_cf(vee)


def test_compatible_examples(p2a, c2):
    assert is_compatible([], empty_cf(p2a))
    # a in f(P) = {a}; b in f(P - F(a)) = f({b}) = {b}
    assert is_compatible("a,b", elementary_cf(p2a, "a,b"))
    assert not is_compatible(["x"], empty_cf(c2))
    assert not is_compatible("b,a", elementary_cf(p2a, "a,b"))


def test_compatible_mismatch(c2, p2a):
    with pytest.raises(PosetMismatch):
        is_compatible(Sequence(c2, ["x"]), empty_cf(p2a))


@settings(max_examples=300)
@given(poset_and_sequence(max_size=6))
def test_eval_matches_definition(ps):
    p, seq = ps
    le = oracles.relation_of(p)
    for x in p.ideal_masks():
        want = oracles.elementary_value(le, seq, frozenset(p.names(x)))
        assert set(eval_elementary(p, seq, p.subset(x))) == want


@settings(max_examples=300, deadline=None)
@given(poset_and_sequence(max_size=5))
def test_elementary_is_conservative(ps):
    p, seq = ps
    assert is_conservative(elementary_cf(p, seq))


@settings(max_examples=200)
@given(poset_and_sequence(max_size=5), st.permutations(list("abcde")))
def test_suffix_after_hit_is_irrelevant(ps, extra):
    p, seq = ps
    suffix = [e for e in extra if e in p and e not in seq]
    for x in p.ideal_masks():
        if first_hit(p, seq, p.subset(x)) is not None:
            assert eval_elementary(p, seq + suffix, p.subset(x)) == eval_elementary(p, seq, p.subset(x))


@pytest.mark.parametrize("n", range(5))
def test_discrete_singletons(n):
    p = antichain(n)
    for k in range(n + 1):
        for seq in itertools.permutations(p.elements, k):
            for x in p.ideal_masks():
                v = eval_elementary(p, seq, p.subset(x))
                hit = first_hit(p, seq, p.subset(x))
                assert len(v) == (0 if hit is None else 1)


def _all_sequences(p):
    for k in range(len(p) + 1):
        yield from itertools.permutations(p.elements, k)


@pytest.mark.parametrize("p", posets_up_to(3) + [antichain(4)], ids=repr)
def test_compatible_sequences_below_hereditary(p):
    for f in enumerate_conservative(p):
        assert check_heredity(f)
        for seq in _all_sequences(p):
            if is_compatible(seq, f):
                assert elementary_cf(p, seq) <= f


@pytest.mark.parametrize("p", posets_up_to(3), ids=repr)
def test_compatible_matches_definition(p):
    le = oracles.relation_of(p)
    full = frozenset(p.elements)
    for f in enumerate_conservative(p):
        t = oracles.as_table(f)
        for seq in _all_sequences(p):
            want = all(seq[i] in t[full - oracles.up(le, seq[:i])] for i in range(len(seq)))
            assert is_compatible(seq, f) == want
