import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fibind.core import UNIT, Atom, DPair, Inl, Inr, MuV, Pair, SetV, all_functions, atoms, render
from fibind.errors import FibindError, SoundnessError
from fibind.fibrations import FAMILIES, SUBOBJECTS
from fibind.functors import ID, UNIT_SET, Const, PowC, SeqC, SumC, apply_object, positions
from fibind.induction import (
    StepAlgebra, canonicalize_hs, fold_term, genind, in_algebra, in_term, ind_direct, is_algebra_morphism, out_term,
    phi, psi, psi_algebra, psi_algebra_direct, terms_up_to,
)
from fibind.laws import random_rose
from fibind.lifting import generic_lift
from fibind.mutations import in_term_without_dedup
from fibind.registry import HS_CODE, NAT_CODE, ROSE_CODE, hs, hs_rank, nat, nat_succ_chain, rose, rose_size, truth_step

ZERO = in_term(NAT_CODE, Inl(UNIT))
EMPTY = hs()


def succ_alg(layer):
    return Atom("z") if isinstance(layer, Inl) else Pair(Atom("s"), layer.value)


def test_in_term_examples():
    assert ZERO == MuV(Inl(UNIT))
    assert in_term(NAT_CODE, Inr(ZERO)) == MuV(Inr(ZERO))
    assert hs(EMPTY, EMPTY) == hs(EMPTY)
    assert hs(hs(EMPTY), hs(EMPTY)) == hs(hs(EMPTY))
    assert canonicalize_hs(MuV(SetV([EMPTY, EMPTY]))) == hs(EMPTY)


def test_out_term_inverts_in_term():
    for code, depth in ((NAT_CODE, 3), (ROSE_CODE, 1), (HS_CODE, 2)):
        ts = terms_up_to(code, depth)
        for layer in apply_object(code, ts):
            assert out_term(in_term(code, layer)) == layer


def test_fold_examples():
    nat_fold = type(in_algebra(NAT_CODE))(NAT_CODE, "proofs", succ_alg)
    assert fold_term(nat_fold, nat(1)) == Pair(Atom("s"), Atom("z"))
    for t in terms_up_to(ROSE_CODE, 2):
        assert fold_term(in_algebra(ROSE_CODE), t) == t


def _count_nodes(t):
    return 1 + sum(_count_nodes(c) for c in t.layer.items)


def test_rose_size_matches_a_direct_walk():
    rng = random.Random(7)
    size = type(in_algebra(ROSE_CODE))(
        ROSE_CODE, "size", lambda layer: Atom(str(1 + sum(int(v.name) for v in layer.items))))
    for _ in range(200):
        t = random_rose(rng, 4)
        assert fold_term(size, t) == Atom(str(_count_nodes(t)))


def test_psi_on_nat_builds_pairs():
    step = StepAlgebra(NAT_CODE, nat_succ_chain)
    alg = psi(step)
    assert alg.apply(Inl(UNIT)) == DPair(ZERO, Atom("z"))
    one = alg.apply(Inr(DPair(ZERO, Atom("z"))))
    assert one == DPair(nat(1), Pair(Atom("s"), Atom("z")))


def test_genind_examples():
    step = StepAlgebra(NAT_CODE, nat_succ_chain)
    assert genind(NAT_CODE, step, nat(2)).proof == Pair(Atom("s"), Pair(Atom("s"), Atom("z")))
    assert genind(NAT_CODE, step, ZERO).proof == ind_direct(NAT_CODE, step, ZERO).proof
    for code in (NAT_CODE, ROSE_CODE, HS_CODE):
        truth = StepAlgebra(code, truth_step)
        assert all(genind(code, truth, t).proof == UNIT for t in terms_up_to(code, 2))


def test_rose_step_sees_every_child():
    t = rose(rose(), rose(rose(), rose()))
    step = StepAlgebra(ROSE_CODE, rose_size)
    seen = []

    def spy(layer):
        seen.append(len(positions(ROSE_CODE, layer)))
        return rose_size(layer)

    assert genind(ROSE_CODE, StepAlgebra(ROSE_CODE, spy), t).proof == Atom("5")
    assert sorted(seen) == [0, 0, 0, 2, 2]
    assert ind_direct(ROSE_CODE, step, t).proof == Atom("5")


def test_first_projection_is_the_identity():
    for code, step in ((NAT_CODE, nat_succ_chain), (ROSE_CODE, rose_size), (HS_CODE, hs_rank)):
        alg = psi(StepAlgebra(code, step))
        for t in terms_up_to(code, 3 if code != ROSE_CODE else 2):
            assert fold_term(alg, t).fst == t


def test_soundness_check_fires_on_skipped_dedup():
    raw = MuV(SetV([MuV(SetV([EMPTY, EMPTY]))]))
    step = StepAlgebra(HS_CODE, hs_rank)
    with pytest.raises(SoundnessError):
        genind(HS_CODE, step, raw, in_term=in_term_without_dedup)
    # the canonical form of the same set goes through
    assert genind(HS_CODE, step, hs(hs(EMPTY))).proof == Atom("2")


def test_genind_rejects_mismatched_codes():
    with pytest.raises(FibindError):
        genind(ROSE_CODE, StepAlgebra(NAT_CODE, nat_succ_chain), rose())


def test_hereditarily_finite_counts():
    assert len(terms_up_to(HS_CODE, 1)) == 2
    assert len(terms_up_to(HS_CODE, 2)) == 4
    assert len(terms_up_to(HS_CODE, 3)) == 16
    assert len(terms_up_to(NAT_CODE, 20)) == 21


@given(st.integers(0, 20))
def test_genind_matches_direct_on_nat(n):
    step = StepAlgebra(NAT_CODE, nat_succ_chain)
    assert genind(NAT_CODE, step, nat(n)) == ind_direct(NAT_CODE, step, nat(n))


@given(st.randoms(use_true_random=False))
def test_genind_matches_direct_on_roses(rng):
    t = random_rose(rng, 4)
    step = StepAlgebra(ROSE_CODE, rose_size)
    assert genind(ROSE_CODE, step, t).proof == ind_direct(ROSE_CODE, step, t).proof == Atom(str(_count_nodes(t)))


# finite carriers


@pytest.mark.parametrize("fib", [FAMILIES, SUBOBJECTS], ids=lambda f: f.name)
def test_phi_targets_truth(fib):
    xs = atoms("a", "b")
    for k in all_functions(apply_object(NAT_CODE, xs), xs):
        m = phi(NAT_CODE, k, fib)
        assert m.target == fib.truth(xs)
        assert m.base == k
    one = atoms("a")
    (k,) = all_functions(apply_object(NAT_CODE, one), one)
    assert len(list(fib.homs(phi(NAT_CODE, k, fib).source, fib.truth(one)))) == 1


@pytest.mark.parametrize("fib", [FAMILIES, SUBOBJECTS], ids=lambda f: f.name)
def test_psi_algebra_closed_form(fib):
    for code in (NAT_CODE, SumC(Const(UNIT_SET), SeqC(ID))):
        for pr in fib.predicates(atoms("a", "b"), 1):
            lifted = generic_lift(fib, code, pr)
            for j in itertools.islice(fib.homs(lifted, pr), 40):
                s = psi_algebra(fib, code, j)
                assert s == psi_algebra_direct(fib, code, j)
                assert s.cod == fib.comprehend(pr)


def test_algebra_morphism_check():
    xs = atoms("a")
    ys = atoms("b", "c")
    (k,) = all_functions(apply_object(NAT_CODE, xs), xs)
    for h in all_functions(apply_object(NAT_CODE, ys), ys):
        for f in all_functions(xs, ys):
            expected = f.table[Atom("a")] == h.table[Inl(UNIT)] == h.table[Inr(f.table[Atom("a")])]
            assert is_algebra_morphism(NAT_CODE, k, h, f) == expected


def test_render_of_terms():
    assert render(nat(1)) == "mu(inr(mu(inl(()))))"
    assert render(hs(EMPTY)) == "mu({mu({})})"
    assert PowC(ID) == HS_CODE
