"""Terms of initial algebras, fold, and induction reduced to iteration.

A term is a :class:`~fibind.core.MuV` wrapping one constructor layer whose
identity positions hold terms. ``genind`` runs induction as a fold of the
algebra ``psi(step)`` on dependent pairs and checks that the carrier
component comes back unchanged; ``ind_direct`` is the plain structural
recursion used as its oracle.

The second half of the module works on finite carriers (explicit function
tables): ``phi`` and ``psi_algebra`` translate between algebras of a functor
and algebras of its lifting.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable

from .core import (
    UNIT, DPair, El, FinFn, FinSet, MuV, Pair, SetV, all_functions, compose_fn, identity_fn, setv,
)
from .errors import FibindError, ShapeError, SoundnessError
from .fibrations import FAMILIES, Family, Fibration, PredMorphism
from .functors import (
    DEFAULT_BOUND, BoundConfig, FunctorCode, PowC, IdC, apply_object, decorate, erase, fmap_with,
    positions,
)
from .lifting import arrow_lift, generic_lift, lift_morphism, lifted_proj, truth_iso

Term = MuV


def _child(code):
    def canon(c):
        if not isinstance(c, MuV):
            raise ShapeError(code, c, "identity position does not hold a term")
        return canonicalize(code, c)
    return canon


def in_term(code: FunctorCode, layer: El) -> Term:
    """The initial algebra's structure map. Set layers are sorted and deduplicated."""
    return MuV(fmap_with(code, _child(code), layer))


def out_term(t: Term) -> El:
    if not isinstance(t, MuV):
        raise ShapeError(IdC(), t, "not a term")
    return t.layer


@functools.lru_cache(maxsize=65536)
def canonicalize(code: FunctorCode, t: Term) -> Term:
    return MuV(fmap_with(code, _child(code), out_term(t)))


def canonicalize_hs(t: Term) -> Term:
    """Canonical form of a hereditarily finite set term (every layer a set)."""
    if not isinstance(t, MuV) or not isinstance(t.layer, SetV):
        raise ShapeError(PowC(IdC()), t, "not a hereditarily finite set term")
    return MuV(setv(canonicalize_hs(c) for c in t.layer.items))


@dataclass(frozen=True)
class TermAlgebra:
    code: FunctorCode
    carrier_name: str
    apply: Callable[[El], El]


@dataclass(frozen=True)
class StepAlgebra:
    """Induction premises: a proof for a layer whose positions carry ``DPair(child, proof)``."""

    code: FunctorCode
    step: Callable[[El], El]
    name: str = ""


@dataclass(frozen=True)
class InductionResult:
    subject: Term
    proof: El


def fold_term(alg: TermAlgebra, t: Term) -> El:
    return alg.apply(fmap_with(alg.code, lambda c: fold_term(alg, c), out_term(t)))


def in_algebra(code: FunctorCode) -> TermAlgebra:
    return TermAlgebra(code, "mu", lambda layer: in_term(code, layer))


def psi(step: StepAlgebra, in_term: Callable[[FunctorCode, El], Term] = in_term) -> TermAlgebra:
    """Turn induction premises into an algebra on (term, proof) pairs."""
    code = step.code

    def apply(layer):
        return DPair(in_term(code, erase(code, layer)), step.step(layer))

    return TermAlgebra(code, "sigma", apply)


def genind(code: FunctorCode, step: StepAlgebra, t: Term,
           in_term: Callable[[FunctorCode, El], Term] = in_term) -> InductionResult:
    if step.code != code:
        raise FibindError(f"step algebra is for {step.code}, not {code}")
    out = fold_term(psi(step, in_term), t)
    if out.fst != t:
        raise SoundnessError(t, out.fst)
    return InductionResult(t, out.snd)


def ind_direct(code: FunctorCode, step: StepAlgebra, t: Term) -> InductionResult:
    layer = out_term(t)
    proofs = [ind_direct(code, step, c).proof for c in positions(code, layer)]
    return InductionResult(t, step.step(decorate(code, layer, proofs)))


def terms_up_to(code: FunctorCode, depth: int, b: BoundConfig = DEFAULT_BOUND,
                in_term: Callable[[FunctorCode, El], Term] = in_term) -> FinSet:
    """Canonical terms of nesting depth at most ``depth`` (leaves have depth 0)."""
    ts = FinSet()
    for _ in range(depth + 1):
        ts = FinSet(in_term(code, layer) for layer in apply_object(code, ts, b))
    return ts


# ---------------------------------------------------------------------------
# finite carriers


def phi(code: FunctorCode, k: FinFn, fib: Fibration = FAMILIES, b: BoundConfig = DEFAULT_BOUND) -> PredMorphism:
    """Algebra of the lifting on the truth predicate, induced by ``k : F X -> X``."""
    xs = k.cod
    if k.dom != apply_object(code, xs, b):
        raise FibindError("k is not an algebra for this code")
    iso = truth_iso(fib, code, xs, b)
    return fib.compose(fib.truth_map(k), iso.forward)


def psi_algebra(fib: Fibration, code: FunctorCode, j: PredMorphism, b: BoundConfig = DEFAULT_BOUND) -> FinFn:
    """Algebra ``F{P} -> {P}`` obtained from an algebra ``j`` of the lifting on ``P``."""
    p = j.target
    if j.source != generic_lift(fib, code, p, b) or j.base.cod != p.carrier:
        raise FibindError("j is not an algebra of the lifting on its target")
    return fib.sharp(fib.compose(j, _psi_prefix(fib, code, p, b)))


@functools.lru_cache(maxsize=4096)
def _psi_prefix(fib: Fibration, code: FunctorCode, p, b: BoundConfig) -> PredMorphism:
    """``lift(counit) . iso^-1 : K1 (F{P}) -> lift(P)``, shared by every ``j`` on ``P``."""
    tot = fib.comprehend(p)
    counit = fib.dagger(identity_fn(tot), p)
    lifted = lift_morphism(fib, code, counit, b)
    iso = truth_iso(fib, code, tot, b)
    return fib.compose(lifted, iso.backward)


def psi_algebra_direct(fib: Fibration, code: FunctorCode, j: PredMorphism, b: BoundConfig = DEFAULT_BOUND) -> FinFn:
    """Closed form of :func:`psi_algebra`, kept as an independent check."""
    p = j.target
    tot = fib.comprehend(p)
    proj = lifted_proj(fib, code, p, b)
    table = {}
    for z in apply_object(code, tot, b):
        y = proj.table[z]
        x = j.base.table[y]
        if isinstance(p, Family):
            table[z] = DPair(x, j.proof_map[(y, Pair(z, UNIT))])
        else:
            table[z] = x
    return FinFn(apply_object(code, tot, b), tot, table)


def is_algebra_morphism(code: FunctorCode, k: FinFn, h: FinFn, f: FinFn, b: BoundConfig = DEFAULT_BOUND) -> bool:
    """Whether ``f . k == h . F f`` (tables compared pointwise)."""
    lhs = compose_fn(f, k)
    ff = arrow_lift(code, f, b)
    if ff.cod != h.dom:
        return False
    return all(lhs.table[z] == h.table[ff.table[z]] for z in k.dom)


def is_lifted_algebra_morphism(fib: Fibration, code: FunctorCode, j1: PredMorphism, j2: PredMorphism,
                               m: PredMorphism, b: BoundConfig = DEFAULT_BOUND) -> bool:
    """Whether ``m . j1 == j2 . lift(m)``."""
    return fib.compose(m, j1) == fib.compose(j2, lift_morphism(fib, code, m, b))


def algebras(code: FunctorCode, xs: FinSet, b: BoundConfig = DEFAULT_BOUND):
    return all_functions(apply_object(code, xs, b), xs)
