"""Liftings of functor codes to predicates.

``generic_lift`` is the composite inverse-image . arrow-lift . projection:
project a predicate to its comprehension map, push that map through the
functor, and take the inverse image of the result in the chosen fibration.
It works for every code, including powersets, and in both fibrations.

``lift_pointwise`` computes the same fiber in container form (one proof per
position) and is what the induction engine uses; ``hj_lift`` is the
inductive sum/product lifting for polynomial codes, kept for comparison.
"""
from __future__ import annotations

import functools
import itertools

from .core import UNIT, DPair, El, FinFn, FinSet, Inl, Inr, Pair, SeqV, SetV, preimage_fn, setv
from .errors import PredicateError, ShapeError, UnsupportedCodeError
from .fibrations import FAMILIES, FamiliesFibration, Family, FibreIso, Fibration, PredMorphism, Predicate
from .functors import (
    DEFAULT_BOUND, BoundConfig, Const, FunctorCode, IdC, PowC, ProdC, SeqC, SumC, apply_object, fmap_el,
    has_pow,
)

ArrowObj = FinFn


def arrow_lift(code: FunctorCode, f: ArrowObj, b: BoundConfig = DEFAULT_BOUND) -> ArrowObj:
    dom = apply_object(code, f.dom, b)
    cod = apply_object(code, f.cod, b)
    return FinFn(dom, cod, {y: fmap_el(code, f, y) for y in dom})


def inv_image(f: ArrowObj, fib: Fibration = FAMILIES) -> Predicate:
    """The predicate on ``cod f`` whose proofs at ``y`` are the tagged preimages of ``y``."""
    if isinstance(fib, FamiliesFibration):
        return Family(f.cod, {y: FinSet(Pair(x, UNIT) for x in preimage_fn(f, y)) for y in f.cod})
    return fib.make(f.cod, lambda y: len(preimage_fn(f, y)) > 0)


@functools.lru_cache(maxsize=16384)
def generic_lift(fib: Fibration, code: FunctorCode, p: Predicate, b: BoundConfig = DEFAULT_BOUND) -> Predicate:
    tot = fib.comprehend(p)
    return fib.opreindex(lifted_proj(fib, code, p, b), fib.truth(apply_object(code, tot, b)))


def lift_morphism(fib: Fibration, code: FunctorCode, m: PredMorphism, b: BoundConfig = DEFAULT_BOUND) -> PredMorphism:
    """Action of the generic lifting on a predicate morphism."""
    top = arrow_lift(code, fib.comprehend_map(m), b)
    bottom = arrow_lift(code, m.base, b)
    return fib.inv_image_map(top, bottom, lifted_proj(fib, code, m.source, b), lifted_proj(fib, code, m.target, b),
                             generic_lift(fib, code, m.source, b), generic_lift(fib, code, m.target, b))


@functools.lru_cache(maxsize=16384)
def lifted_proj(fib: Fibration, code: FunctorCode, p: Predicate, b: BoundConfig = DEFAULT_BOUND) -> ArrowObj:
    """``F`` applied to the comprehension projection of ``p``."""
    return arrow_lift(code, fib.proj(p), b)


@functools.lru_cache(maxsize=4096)
def truth_iso(fib: Fibration, code: FunctorCode, xs: FinSet, b: BoundConfig = DEFAULT_BOUND) -> FibreIso:
    """Witness that lifting the truth predicate yields the truth predicate.

    Every fiber of the lift must be a singleton; the witness sends its unique
    element to the unit proof and back.
    """
    lifted = generic_lift(fib, code, fib.truth(xs), b)
    target = fib.truth(lifted.carrier)

    def back(y, _):
        ps = lifted.proofs(y)
        if len(ps) != 1:
            raise PredicateError(f"lifted truth has {len(ps)} proofs at {y}")
        return ps.elements[0]

    return fib.fibre_iso(lifted, target, lambda y, q: UNIT, back)


def lift_pointwise(code: FunctorCode, p: Predicate, y: El) -> FinSet:
    """Product-over-positions fiber of the lifting at ``y`` (families only)."""
    if not isinstance(p, Family):
        raise PredicateError("pointwise lifting is defined for the families fibration")
    decorated = _decorations(code, y, p.fiber)
    if has_pow(code):
        return FinSet(decorated)
    # without sets, decorations come out in canonical order
    return FinSet._sorted(tuple(decorated))


def _decorations(code: FunctorCode, y: El, fiber) -> list[El]:
    """Every way of decorating ``y``, one proof per position: ``decorate`` over all picks."""
    match code:
        case Const():
            if y not in code.values:
                raise ShapeError(code, y, "not an element of the constant set")
            return [y]
        case IdC():
            return [DPair(y, q) for q in fiber[y]]
        case SumC(l, r):
            if type(y) is Inl:
                return [Inl(v) for v in _decorations(l, y.value, fiber)]
            if type(y) is Inr:
                return [Inr(v) for v in _decorations(r, y.value, fiber)]
            raise ShapeError(code, y, "expected inl or inr")
        case ProdC(l, r):
            if type(y) is not Pair:
                raise ShapeError(code, y, "expected a pair")
            rights = _decorations(r, y.snd, fiber)
            return [Pair(a, c) for a in _decorations(l, y.fst, fiber) for c in rights]
        case SeqC(a):
            if type(y) is not SeqV:
                raise ShapeError(code, y, "expected a sequence")
            return [SeqV(t) for t in itertools.product(*(_decorations(a, v, fiber) for v in y.items))]
        case PowC(a):
            if type(y) is not SetV:
                raise ShapeError(code, y, "expected a set")
            return [setv(t) for t in itertools.product(*(_decorations(a, v, fiber) for v in y.items))]
    raise TypeError(f"not a functor code: {code!r}")


def pointwise_family(code: FunctorCode, p: Family, b: BoundConfig = DEFAULT_BOUND) -> Family:
    carrier = apply_object(code, p.carrier, b)
    return Family(carrier, {y: lift_pointwise(code, p, y) for y in carrier})


@functools.lru_cache(maxsize=16384)
def hj_lift(code: FunctorCode, p: Predicate, fib: Fibration = FAMILIES) -> Predicate:
    """Inductive lifting for polynomial codes: constants lift to truth, sums and
    products fiberwise."""
    match code:
        case Const(s):
            return fib.truth(s)
        case IdC():
            return p
        case SumC(l, r):
            return sum_of_predicates(fib, hj_lift(l, p, fib), hj_lift(r, p, fib))
        case ProdC(l, r):
            return product_of_predicates(fib, hj_lift(l, p, fib), hj_lift(r, p, fib))
    raise UnsupportedCodeError(f"{code} is not polynomial")


def sum_of_predicates(fib: Fibration, left: Predicate, right: Predicate) -> Predicate:
    """Fiberwise tagged sum over the disjoint-union carrier."""
    carrier = FinSet._sorted(tuple(Inl(u) for u in left.carrier) + tuple(Inr(v) for v in right.carrier))
    if isinstance(left, Family):
        return Family(carrier, {
            y: FinSet((Inl if isinstance(y, Inl) else Inr)(q)
                      for q in (left if isinstance(y, Inl) else right).proofs(y.value))
            for y in carrier
        })
    return fib.make(carrier, lambda y: len((left if isinstance(y, Inl) else right).proofs(y.value)) > 0)


def product_of_predicates(fib: Fibration, left: Predicate, right: Predicate) -> Predicate:
    """Fiberwise product over the cartesian-product carrier; proofs are pairs."""
    carrier = FinSet._sorted(tuple(Pair(u, v) for u in left.carrier for v in right.carrier))
    if isinstance(left, Family):
        return Family(carrier, {
            y: FinSet._sorted(tuple(Pair(a, c) for a in left.proofs(y.fst) for c in right.proofs(y.snd)))
            for y in carrier
        })
    return fib.make(carrier, lambda y: len(left.proofs(y.fst)) > 0 and len(right.proofs(y.snd)) > 0)
