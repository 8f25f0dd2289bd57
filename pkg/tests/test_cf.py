import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from posetchoice.cf import (
    ChoiceFunction,
    check_conservative,
    check_heredity,
    check_idempotent,
    check_law,
    check_outcast,
    check_path_independence,
    check_single_condition,
    constant_cf,
    empty_cf,
    enumerate_conservative,
    enumerate_path_independent,
    identity_cf,
    is_conservative,
    recheck,
    union_cf,
    validate_cf,
)
from posetchoice.corpus import antichain, chain, posets_up_to
from posetchoice.elementary import elementary_cf
from posetchoice.errors import CapExceeded, DuplicateKey, NotIdeal, NotSelection, NotTotal, PosetMismatch
from strategies import posets

CORPUS = posets_up_to(4)
# posets whose full table space is small enough for the naive product oracle
SMALL = [p for p in CORPUS if oracles.table_count(list(p.elements), oracles.relation_of(p)) <= 50_000]


def cf_from(p, rows):
    return validate_cf(p, [(list(k), list(v)) for k, v in rows])


@pytest.fixture
def hered_fail(c2):
    return cf_from(c2, [("", ""), ("x", ""), ("xy", "xy")])


@pytest.fixture
def pi_fail(c2):
    return cf_from(c2, [("", ""), ("x", ""), ("xy", "x")])


@st.composite
def random_cfs(draw, max_size=4):
    p = draw(posets(max_size=max_size))
    ideals = p.ideal_masks()
    values = [draw(st.sampled_from([s for s in ideals if s & ~x == 0])) for x in ideals]
    return ChoiceFunction(p, values)


class TestValidate:
    def test_constant_table(self, c2):
        f = cf_from(c2, [("", ""), ("x", "x"), ("xy", "x")])
        assert f == constant_cf(c2, ["x"])

    def test_not_ideal(self, c2):
        with pytest.raises(NotIdeal):
            cf_from(c2, [("", ""), ("x", "x"), ("xy", "y")])

    def test_not_total(self, c2):
        with pytest.raises(NotTotal):
            cf_from(c2, [("", ""), ("xy", "x")])

    def test_not_selection(self, c2):
        with pytest.raises(NotSelection):
            cf_from(c2, [("x", "xy"), ("xy", "x")])

    def test_duplicate(self, c2):
        with pytest.raises(DuplicateKey):
            cf_from(c2, [("x", "x"), ("x", ""), ("xy", "x")])

    def test_key_not_ideal(self, c2):
        with pytest.raises(NotIdeal):
            cf_from(c2, [("y", ""), ("x", ""), ("xy", "")])

    def test_empty_entry_defaults(self, c2):
        f = cf_from(c2, [("x", "x"), ("xy", "x")])
        assert f(c2.subset(0)).names == ()


class TestCheckers:
    def test_heredity_examples(self, c2, vee, hered_fail):
        assert check_heredity(constant_cf(vee, ["a"]))
        assert check_heredity(empty_cf(vee))
        rep = check_heredity(hered_fail)
        assert not rep
        assert rep.witness["A"].names == ("x",)
        assert rep.witness["B"].names == ("x", "y")
        assert rep.witness["element"] == "x"

    def test_outcast_examples(self, c2, vee):
        assert check_outcast(constant_cf(vee, ["a", "b"]))
        assert check_outcast(identity_cf(vee))
        rep = check_outcast(cf_from(c2, [("", ""), ("x", "x"), ("xy", "")]))
        assert not rep
        assert rep.witness["B"].names == ("x", "y") and rep.witness["A"].names == ("x",)

    def test_single_examples(self, c2, hered_fail):
        assert check_single_condition(empty_cf(c2))
        assert not check_single_condition(hered_fail)

    def test_conservative_examples(self, p2a, vee, hered_fail):
        assert is_conservative(constant_cf(vee, ["a"]))
        assert is_conservative(identity_cf(p2a))
        assert not is_conservative(hered_fail)
        assert check_conservative(hered_fail).law == "heredity"

    def test_path_independence_examples(self, hered_fail, pi_fail):
        assert check_path_independence(hered_fail)
        rep = check_path_independence(pi_fail)
        assert not rep
        assert rep.witness["X"].names == ("x",) and rep.witness["Y"].names == ("x", "y")

    def test_idempotent_examples(self, vee, pi_fail):
        assert check_idempotent(identity_cf(vee))
        rep = check_idempotent(pi_fail)
        assert not rep and rep.witness["X"].names == ("x", "y")

    def test_unknown_law(self, c2):
        with pytest.raises(ValueError):
            check_law(empty_cf(c2), "nonsense")

    @settings(max_examples=200)
    @given(random_cfs())
    def test_checkers_agree_with_oracle(self, f):
        t = oracles.as_table(f)
        assert bool(check_heredity(f)) == oracles.hereditary(t)
        assert bool(check_outcast(f)) == oracles.outcast(t)
        assert bool(check_path_independence(f)) == oracles.path_independent(t)

    @settings(max_examples=200)
    @given(random_cfs())
    def test_failures_recheck(self, f):
        for law in ("heredity", "outcast", "path-independence", "idempotent", "single"):
            rep = check_law(f, law)
            if not rep:
                assert recheck(f, rep)

    def test_report_json(self, hered_fail):
        data = check_heredity(hered_fail).to_json()
        assert data == {"law": "heredity", "verdict": "fail",
                        "witness": {"A": ["x"], "B": ["x", "y"], "element": "x"}}


class TestConstructors:
    def test_constant(self, c2, vee):
        assert oracles.as_table(constant_cf(c2, ["x"])) == {
            frozenset(): frozenset(), frozenset("x"): frozenset("x"), frozenset("xy"): frozenset("x")}
        assert constant_cf(vee, []) == empty_cf(vee)
        assert constant_cf(vee, list("abc")) == identity_cf(vee)
        with pytest.raises(NotIdeal):
            constant_cf(c2, ["y"])

    def test_union_of_constants(self, vee):
        assert union_cf([constant_cf(vee, ["a"]), constant_cf(vee, ["b"])]) == constant_cf(vee, ["a", "b"])

    def test_union_single(self, vee):
        f = constant_cf(vee, ["a"])
        assert union_cf([f]) == f

    def test_elementary_pair_union_is_identity(self, p2a):
        assert union_cf([elementary_cf(p2a, "a,b"), elementary_cf(p2a, "b,a")]) == identity_cf(p2a)

    def test_mismatch(self, c2, p2a):
        with pytest.raises(PosetMismatch):
            union_cf([empty_cf(c2), empty_cf(p2a)])
        with pytest.raises(ValueError):
            union_cf([])

    def test_union_algebra(self, vee):
        fs = enumerate_conservative(vee)
        for f, g in itertools.product(fs, repeat=2):
            u = f | g
            assert is_conservative(u)
            assert u == g | f
            assert f | f == f
        for f, g, h in itertools.product(fs[:5], repeat=3):
            assert (f | g) | h == f | (g | h)


class TestEnumerate:
    def test_counts(self, c2, p2a, one):
        assert len(enumerate_conservative(c2)) == 3
        assert len(enumerate_conservative(p2a)) == 6
        assert len(enumerate_conservative(one)) == 2
        assert len(enumerate_path_independent(c2)) == 4
        assert len(enumerate_path_independent(one)) == 2
        assert set(enumerate_path_independent(p2a)) == set(enumerate_conservative(p2a))

    def test_chain_gives_constants(self, c2):
        want = {constant_cf(c2, []), constant_cf(c2, ["x"]), identity_cf(c2)}
        assert set(enumerate_conservative(c2)) == want

    def test_gap_on_chain(self, c2, hered_fail):
        gap = set(enumerate_path_independent(c2)) - set(enumerate_conservative(c2))
        assert gap == {hered_fail}

    @pytest.mark.parametrize("p", SMALL, ids=repr)
    def test_matches_naive_oracle(self, p):
        le = oracles.relation_of(p)
        tables = list(oracles.all_tables(list(p.elements), le))
        key = lambda t: frozenset(t.items())  # noqa: E731
        got_c = {key(oracles.as_table(f)) for f in enumerate_conservative(p)}
        got_pi = {key(oracles.as_table(f)) for f in enumerate_path_independent(p)}
        assert got_c == {key(t) for t in tables if oracles.conservative(t)}
        assert got_pi == {key(t) for t in tables if oracles.path_independent(t)}

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_conservative(antichain(4), cap=50)

    def test_deterministic(self, vee):
        assert enumerate_conservative(vee) == enumerate_conservative(vee)


class TestLaws:
    """Properties of conservative choice functions, exhaustively over small posets."""

    @pytest.mark.parametrize("p", CORPUS, ids=repr)
    def test_conservative_consequences(self, p):
        for f in enumerate_conservative(p):
            assert check_idempotent(f)
            assert check_path_independence(f)
            assert check_single_condition(f)

    @pytest.mark.parametrize("p", posets_up_to(3), ids=repr)
    def test_nary_path_independence(self, p):
        ideals = p.ideal_masks()
        for f in enumerate_conservative(p):
            for x, y, z in itertools.product(ideals, repeat=3):
                inner = f.value(x) | f.value(y) | f.value(z)
                assert f.value(x | y | z) == f.value(inner)

    @pytest.mark.parametrize("p", CORPUS, ids=repr)
    def test_path_independence_implies_outcast(self, p):
        for f in enumerate_path_independent(p):
            assert check_outcast(f)

    @pytest.mark.parametrize("p", SMALL, ids=repr)
    def test_single_condition_equivalence_all_tables(self, p):
        le = oracles.relation_of(p)
        ideals = p.ideal_masks()
        order = {frozenset(p.names(m)): k for k, m in enumerate(ideals)}
        for t in oracles.all_tables(list(p.elements), le):
            values = [0] * len(ideals)
            for x, fx in t.items():
                values[order[x]] = p.mask(fx)
            f = ChoiceFunction(p, values)
            assert bool(check_single_condition(f)) == is_conservative(f)

    @settings(max_examples=300)
    @given(random_cfs(max_size=5))
    def test_single_condition_equivalence_random(self, f):
        assert bool(check_single_condition(f)) == is_conservative(f)

    @pytest.mark.parametrize("n", range(7))
    def test_linear_posets(self, n):
        p = chain(n)
        fs = enumerate_conservative(p)
        assert len(fs) == n + 1
        for f in fs:
            assert f == constant_cf(p, f(p.names(p.full)))
