import itertools

import pytest
from hypothesis import given, strategies as st

from fibind.core import UNIT, Atom, DPair, FinFn, FinSet, Inl, Inr, Pair, SeqV, SetV, all_functions, atoms, compose_fn
from fibind.errors import DecorationError, ShapeError
from fibind.functors import (
    ID, UNIT_SET, BoundConfig, Const, IdC, PowC, ProdC, SeqC, SumC, apply_object, decorate, depth,
    enumerate_codes, erase, fmap_el, has_pow, is_polynomial, is_shaped, object_size, positions, show_code,
)
from strategies import codes

NAT = SumC(Const(UNIT_SET), IdC())
a, b, c = Atom("a"), Atom("b"), Atom("c")
SMALL = BoundConfig(seq_len_bound=2)


def test_apply_object_examples():
    assert apply_object(NAT, atoms("a", "b")) == FinSet([Inl(UNIT), Inr(a), Inr(b)])
    assert apply_object(PowC(ID), atoms("a")) == FinSet([SetV([]), SetV([a])])
    for n in range(4):
        xs = FinSet(Atom(f"x{i}") for i in range(n))
        assert len(apply_object(ProdC(ID, ID), xs)) == n * n


def test_seq_truncation():
    xs = atoms("a", "b")
    assert len(apply_object(SeqC(ID), xs, BoundConfig(seq_len_bound=3))) == 1 + 2 + 4 + 8
    assert apply_object(SeqC(ID), xs, BoundConfig(seq_len_bound=0)) == FinSet([SeqV([])])


@given(codes, st.integers(0, 3))
def test_object_size_matches_enumeration(code, n):
    xs = FinSet(Atom(f"x{i}") for i in range(n))
    size = object_size(code, n, SMALL, limit=2000)
    if size <= 2000:
        assert len(apply_object(code, xs, SMALL)) == size


def test_fmap_examples():
    f = FinFn(atoms("a", "b"), atoms("c"), {a: c, b: c})
    assert fmap_el(NAT, f, Inr(a)) == Inr(c)
    assert fmap_el(NAT, f, Inl(UNIT)) == Inl(UNIT)
    assert fmap_el(PowC(ID), f, SetV([a, b])) == SetV([c])


def test_fmap_rejects_ill_shaped_values():
    f = FinFn(atoms("a"), atoms("a"), {a: a})
    with pytest.raises(ShapeError):
        fmap_el(NAT, f, Pair(a, a))
    with pytest.raises(ShapeError):
        fmap_el(ID, f, b)


def _depth2_codes():
    return list(enumerate_codes(2, [FinSet(), UNIT_SET]))


def test_functor_laws_exhaustive():
    sets = [FinSet(), atoms("a"), atoms("a", "b"), atoms("a", "b", "c")]
    for code in _depth2_codes():
        for xs in sets:
            if object_size(code, len(xs), SMALL, limit=300) > 300:
                continue
            fx = apply_object(code, xs, SMALL)
            ident = FinFn(xs, xs, {x: x for x in xs})
            assert all(fmap_el(code, ident, y) == y for y in fx)
    # composition on sizes <= 2
    for code in _depth2_codes():
        for x1, x2, x3 in itertools.product(sets[:3], repeat=3):
            if object_size(code, len(x1), SMALL, limit=100) > 100:
                continue
            fx = apply_object(code, x1, SMALL)
            for f in all_functions(x1, x2):
                for g in all_functions(x2, x3):
                    gf = compose_fn(g, f)
                    assert all(fmap_el(code, gf, y) == fmap_el(code, g, fmap_el(code, f, y)) for y in fx)


def test_fmap_lands_in_the_object():
    xs, ys = atoms("a", "b"), atoms("c")
    f = FinFn(xs, ys, {a: c, b: c})
    for code in _depth2_codes():
        if object_size(code, 2, SMALL, limit=200) > 200:
            continue
        target = apply_object(code, ys, SMALL)
        assert all(fmap_el(code, f, y) in target for y in apply_object(code, xs, SMALL))


def test_positions_examples():
    r0, r1 = Atom("r0"), Atom("r1")
    assert positions(NAT, Inl(UNIT)) == []
    assert positions(SeqC(ID), SeqV([r0, r1])) == [r0, r1]
    assert positions(PowC(ID), SetV([a, b])) == [a, b]


def test_decorate_examples():
    r0, r1, p, p0, p1 = (Atom(n) for n in ("r0", "r1", "p", "p0", "p1"))
    assert decorate(ID, a, [p]) == DPair(a, p)
    assert decorate(SeqC(ID), SeqV([r0, r1]), [p0, p1]) == SeqV([DPair(r0, p0), DPair(r1, p1)])
    with pytest.raises(DecorationError):
        decorate(SeqC(ID), SeqV([r0, r1]), [p0])
    with pytest.raises(DecorationError):
        decorate(ID, a, [p0, p1])


def test_erase_inverts_decorate_exhaustively():
    xs = atoms("a", "b")
    proofs = [Atom("p"), Atom("q")]
    for code in _depth2_codes():
        if object_size(code, 2, SMALL, limit=200) > 200:
            continue
        for y in apply_object(code, xs, SMALL):
            n = len(positions(code, y))
            for ps in itertools.product(proofs, repeat=n):
                assert erase(code, decorate(code, y, list(ps))) == y


@given(codes)
def test_shape_predicates(code):
    assert is_polynomial(code) == (not any(isinstance(c, (SeqC, PowC)) for c in _subcodes(code)))
    assert has_pow(code) == any(isinstance(c, PowC) for c in _subcodes(code))
    xs = atoms("a")
    if object_size(code, 1, SMALL, limit=100) <= 100:
        assert all(is_shaped(code, y, xs) for y in apply_object(code, xs, SMALL))


def _subcodes(code):
    yield code
    for part in getattr(code, "left", None), getattr(code, "right", None), getattr(code, "arg", None):
        if part is not None:
            yield from _subcodes(part)


def test_is_shaped_rejects_unsorted_sets():
    assert not is_shaped(PowC(ID), SetV([b, a]))
    assert is_shaped(PowC(ID), SetV([a, b]))


def test_show_code():
    assert show_code(NAT) == "1 + X"
    assert show_code(ProdC(SumC(ID, ID), ID)) == "(X + X) x X"
    assert show_code(SeqC(SeqC(ID))) == "List (List X)"
    assert show_code(PowC(ProdC(Const(atoms("a")), ID))) == "Pf (K{a} x X)"
    assert show_code(SumC(SumC(ID, ID), ID)) == "(X + X) + X"
    assert show_code(SumC(ID, SumC(ID, ID))) == "X + X + X"
    assert show_code(Const(FinSet())) == "0"


def test_enumerate_codes_is_stable_and_deduplicated():
    cs = list(enumerate_codes(2, [FinSet(), UNIT_SET]))
    assert cs == list(enumerate_codes(2, [FinSet(), UNIT_SET]))
    assert len(cs) == len(set(cs)) == 1515
    assert max(depth(c) for c in cs) == 2
    poly = list(enumerate_codes(2, [FinSet(), UNIT_SET], polynomial=True))
    assert poly == [c for c in cs if is_polynomial(c)]
