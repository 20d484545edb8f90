import itertools

import pytest
from hypothesis import given, strategies as st

from fibind.core import (
    UNIT, Atom, FinFn, FinSet, Inl, Inr, Ordering, Pair, SeqV, SetV, all_functions, atoms, canonical_order,
    compose_fn, functions_up_to_relabelling, identity_fn, parse_el, preimage_fn, render, setv,
)
from fibind.errors import CompositionError, ElSyntaxError, FinFnError
from strategies import composable, els, finsets, functions


def test_canonical_order_examples():
    assert canonical_order(Atom("a"), Atom("a")) is Ordering.EQ
    assert canonical_order(Inl(UNIT), Inr(UNIT)) is Ordering.LT
    assert sorted([SetV([Atom("b")]), UNIT, Atom("a")]) == [UNIT, Atom("a"), SetV([Atom("b")])]


def _small_els():
    leaves = [UNIT, Atom("a"), Atom("b")]
    level = leaves + [Inl(UNIT), Inr(Atom("a")), SetV([]), SeqV([Atom("a")])]
    return level + [Pair(x, y) for x in level[:4] for y in level[:4]] + [setv(level[:3]), SeqV(level[1:3])]


def test_canonical_order_is_total_by_enumeration():
    vals = _small_els()
    for a, b in itertools.product(vals, repeat=2):
        ab, ba = canonical_order(a, b), canonical_order(b, a)
        assert ab == -ba
        assert (ab is Ordering.EQ) == (a == b)
    for a, b, c in itertools.product(vals[:12], repeat=3):
        if canonical_order(a, b) <= 0 and canonical_order(b, c) <= 0:
            assert canonical_order(a, c) <= 0


@given(els, els, els)
def test_order_is_transitive_and_antisymmetric(a, b, c):
    if a <= b and b <= c:
        assert a <= c
    if a <= b and b <= a:
        assert a == b
    assert (a < b) or (b < a) or (a == b)


@given(els)
def test_render_parse_round_trip(v):
    assert parse_el(render(v)) == v


@given(els, els)
def test_equal_values_hash_equal(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert parse_el(render(a)) == a and hash(parse_el(render(a))) == hash(a)


@pytest.mark.parametrize("text", ["", "(", "inl(", "{a,", "<a | >", "mu", "a b"])
def test_parse_errors_have_offsets(text):
    with pytest.raises(ElSyntaxError):
        parse_el(text)


def test_setv_sorts_and_deduplicates():
    a, b = Atom("a"), Atom("b")
    assert setv([b, a, b]) == SetV([a, b])
    assert not SetV([b, a]).is_canonical


def test_finset_is_sorted_and_deduplicated():
    s = FinSet([Atom("b"), Atom("a"), Atom("b")])
    assert s.elements == (Atom("a"), Atom("b"))
    assert s == atoms("b", "a")
    assert Atom("a") in s and Atom("c") not in s


def test_composition_examples():
    f = FinFn(atoms("a", "b"), atoms("c"), {Atom("a"): Atom("c"), Atom("b"): Atom("c")})
    g = FinFn(atoms("c"), atoms("d"), {Atom("c"): Atom("d")})
    gf = compose_fn(g, f)
    assert gf.table == {Atom("a"): Atom("d"), Atom("b"): Atom("d")}
    assert compose_fn(g, identity_fn(g.dom)) == g
    with pytest.raises(CompositionError):
        compose_fn(f, g)


def test_finfn_validation():
    with pytest.raises(FinFnError):
        FinFn(atoms("a"), atoms("b"), {})
    with pytest.raises(FinFnError):
        FinFn(atoms("a"), atoms("b"), {Atom("a"): Atom("z")})


def test_associativity_exhaustive_small():
    sets = [FinSet(), atoms("a"), atoms("a", "b")]
    for a, b, c, d in itertools.product(sets, repeat=4):
        for f in all_functions(a, b):
            for g in all_functions(b, c):
                for h in all_functions(c, d):
                    assert compose_fn(compose_fn(h, g), f) == compose_fn(h, compose_fn(g, f))


@given(composable(2))
def test_composition_is_associative(fns):
    f, g = fns
    assert compose_fn(identity_fn(g.cod), compose_fn(g, f)) == compose_fn(g, compose_fn(f, identity_fn(f.dom)))


def test_preimage_examples():
    a, b, c, d = (Atom(n) for n in "abcd")
    assert preimage_fn(identity_fn(atoms("a", "b")), a) == atoms("a")
    f = FinFn(atoms("a", "b"), atoms("c", "d"), {a: c, b: c})
    assert preimage_fn(f, c) == atoms("a", "b")
    assert preimage_fn(f, d) == FinSet()


@given(functions())
def test_preimages_partition_the_domain(f):
    parts = [preimage_fn(f, y) for y in f.cod]
    assert sum(len(p) for p in parts) == len(f.dom)
    assert FinSet(x for p in parts for x in p) == f.dom


def test_function_counts():
    for n, m in itertools.product(range(4), repeat=2):
        dom, cod = FinSet(Atom(f"x{i}") for i in range(n)), FinSet(Atom(f"y{i}") for i in range(m))
        assert len(list(all_functions(dom, cod))) == m ** n


@given(finsets(3), finsets(3).filter(len))
def test_relabelling_representatives_meet_every_orbit(dom, cod):
    reps = {tuple(sorted(f.table.values())) for f in functions_up_to_relabelling(dom, cod)}
    orbits = {tuple(sorted(f.table.values())) for f in all_functions(dom, cod)}
    assert reps == orbits
    assert len(reps) == len(list(functions_up_to_relabelling(dom, cod)))


@given(st.lists(els, max_size=5))
def test_finset_equality_ignores_order(xs):
    assert FinSet(xs) == FinSet(reversed(xs))
