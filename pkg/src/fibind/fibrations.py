"""Executable Lawvere categories over finite sets.

Two instances are provided, :data:`FAMILIES` (proof-relevant predicates:
each element carries a finite set of proofs) and :data:`SUBOBJECTS`
(proof-irrelevant predicates: subsets). Morphisms of both are stored the
same way, as a base function plus a table of proof images; for subobjects
every proof is the unit value, so the proof table is trivial.

Each instance exposes truth, comprehension and its projection, reindexing
along a function and its left adjoint (opreindexing), and the transposition
maps ``dagger``/``sharp`` witnessing that truth is left adjoint to
comprehension.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .core import (
    UNIT, Atom, DPair, El, FinFn, FinSet, Pair, all_functions, compose_fn, identity_fn, render,
)
from .errors import CompositionError, PredicateError

UNIT_SET = FinSet([UNIT])
EMPTY = FinSet()


class Family:
    """A predicate mapping every carrier element to its (finite) set of proofs."""

    __slots__ = ("carrier", "fiber", "_hash")

    def __init__(self, carrier: FinSet, fiber: Mapping[El, FinSet]):
        fiber = dict(fiber)
        if set(fiber) != set(carrier):
            raise PredicateError("fiber map must be total on the carrier and nothing else")
        self.carrier = carrier
        self.fiber = fiber
        self._hash = hash((carrier, tuple(fiber[x] for x in carrier)))

    def proofs(self, x: El) -> FinSet:
        return self.fiber[x]

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.carrier == other.carrier and self.fiber == other.fiber

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = "; ".join(f"{render(x)}: {self.fiber[x]!r}" for x in self.carrier)
        return f"Family({body})"


class Subobject:
    """A predicate given by the subset of carrier elements satisfying it."""

    __slots__ = ("carrier", "members", "_hash")

    def __init__(self, carrier: FinSet, members: FinSet):
        if not members <= carrier:
            raise PredicateError("members must be a subset of the carrier")
        self.carrier = carrier
        self.members = members
        self._hash = hash((carrier, members))

    def proofs(self, x: El) -> FinSet:
        if x not in self.carrier:
            raise KeyError(x)
        return UNIT_SET if x in self.members else EMPTY

    def __eq__(self, other):
        if not isinstance(other, Subobject):
            return NotImplemented
        return self.carrier == other.carrier and self.members == other.members

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subobject({self.members!r} of {self.carrier!r})"


Predicate = Family | Subobject


class PredMorphism:
    """A morphism of predicates: a base function plus a proof for every source proof.

    ``proof_map`` maps ``(x, p)`` with ``p`` a proof of ``x`` in the source to a
    proof of ``base(x)`` in the target.
    """

    __slots__ = ("source", "target", "base", "proof_map")

    def __init__(self, source: Predicate, target: Predicate, base: FinFn, proof_map: Mapping[tuple, El]):
        if base.dom != source.carrier or base.cod != target.carrier:
            raise PredicateError("base function does not run between the carriers")
        proof_map = dict(proof_map)
        n = 0
        for x in source.carrier:
            fx = base.table[x]
            tgt = target.proofs(fx)
            for p in source.proofs(x):
                n += 1
                q = proof_map.get((x, p))
                if q is None:
                    raise PredicateError(f"no proof image for ({render(x)}, {render(p)})")
                if q not in tgt:
                    raise PredicateError(
                        f"proof {render(q)} is not a proof of {render(fx)} in the target"
                    )
        if n != len(proof_map):
            raise PredicateError("proof map has entries for non-proofs")
        self.source = source
        self.target = target
        self.base = base
        self.proof_map = proof_map

    def __eq__(self, other):
        if not isinstance(other, PredMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.base == other.base and self.proof_map == other.proof_map)

    def __hash__(self):
        return hash((self.source, self.target, self.base))

    def __repr__(self):
        pm = ", ".join(f"({render(x)},{render(p)})->{render(q)}" for (x, p), q in self.proof_map.items())
        return f"PredMorphism(base={self.base!r}, proofs={{{pm}}})"

    def is_vertical(self) -> bool:
        return self.source.carrier == self.target.carrier and all(
            x == y for x, y in self.base.table.items()
        )


@dataclass(frozen=True)
class FibreIso:
    forward: PredMorphism
    backward: PredMorphism

    def problems(self, fib: "Fibration") -> list[str]:
        out = []
        if not (self.forward.is_vertical() and self.backward.is_vertical()):
            out.append("iso components are not above the identity")
            return out
        if self.forward.source != self.backward.target or self.forward.target != self.backward.source:
            out.append("iso components are not opposite")
            return out
        # above the identity, the composites are identities iff the proof maps are mutually inverse
        fwd, bwd = self.forward.proof_map, self.backward.proof_map
        if any(bwd[(x, q)] != p for (x, p), q in fwd.items()):
            out.append("backward . forward is not the identity")
        if any(fwd[(x, p)] != q for (x, q), p in bwd.items()):
            out.append("forward . backward is not the identity")
        return out


class Fibration:
    """Shared structure of the two finite-set instances."""

    name = "?"

    # -- predicates -------------------------------------------------------
    def truth(self, xs: FinSet) -> Predicate:
        raise NotImplementedError

    def make(self, carrier: FinSet, proofs: Callable[[El], FinSet]) -> Predicate:
        raise NotImplementedError

    def comprehend(self, p: Predicate) -> FinSet:
        raise NotImplementedError

    def proj(self, p: Predicate) -> FinFn:
        raise NotImplementedError

    def reindex(self, f: FinFn, p: Predicate) -> Predicate:
        if f.cod != p.carrier:
            raise PredicateError("reindexing function's codomain is not the predicate's carrier")
        return self.make(f.dom, lambda x: p.proofs(f.table[x]))

    def opreindex(self, f: FinFn, p: Predicate) -> Predicate:
        raise NotImplementedError

    def predicates(self, carrier: FinSet, max_fiber: int, up_to_relabelling: bool = False) -> Iterator[Predicate]:
        """All predicates on ``carrier`` with fibers of size at most ``max_fiber``.

        With ``up_to_relabelling`` only one predicate per orbit under
        permutations of the carrier is produced: fiber sizes never decrease
        along the canonical order.
        """
        raise NotImplementedError

    # -- morphisms --------------------------------------------------------
    def morphism(self, source, target, base: FinFn, proof_of: Callable[[El, El], El]) -> PredMorphism:
        pm = {(x, p): proof_of(x, p) for x in source.carrier for p in source.proofs(x)}
        return PredMorphism(source, target, base, pm)

    def identity(self, p: Predicate) -> PredMorphism:
        return PredMorphism(p, p, identity_fn(p.carrier),
                            {(x, q): q for x in p.carrier for q in p.proofs(x)})

    def compose(self, g: PredMorphism, f: PredMorphism) -> PredMorphism:
        if f.target != g.source:
            raise CompositionError("predicate morphisms do not compose")
        base = compose_fn(g.base, f.base)
        fb, fp, gp = f.base.table, f.proof_map, g.proof_map
        return PredMorphism(f.source, g.target, base,
                            {(x, p): gp[(fb[x], q)] for (x, p), q in fp.items()})

    def truth_map(self, f: FinFn) -> PredMorphism:
        """``K1 f``: the truth functor on a base function."""
        return self.morphism(self.truth(f.dom), self.truth(f.cod), f, lambda x, p: p)

    def homs(self, source: Predicate, target: Predicate, base: FinFn | None = None) -> Iterator[PredMorphism]:
        """All morphisms ``source -> target`` (above ``base`` when given)."""
        bases = [base] if base is not None else all_functions(source.carrier, target.carrier)
        for f in bases:
            slots = [(x, p) for x in source.carrier for p in source.proofs(x)]
            choices = [target.proofs(f.table[x]).elements for x, _ in slots]
            for pick in itertools.product(*choices):
                yield PredMorphism(source, target, f, dict(zip(slots, pick)))

    def fibre_homs(self, source: Predicate, target: Predicate) -> Iterator[PredMorphism]:
        if source.carrier != target.carrier:
            raise PredicateError("fibre morphisms need a common carrier")
        return self.homs(source, target, identity_fn(source.carrier))

    def vertical(self, source, target, proof_of: Callable[[El, El], El]) -> PredMorphism:
        if source.carrier != target.carrier:
            raise PredicateError("vertical morphisms need a common carrier")
        return self.morphism(source, target, identity_fn(source.carrier), proof_of)

    def fibre_iso(self, source, target, fwd: Callable[[El, El], El], bwd: Callable[[El, El], El]) -> FibreIso:
        """Build an iso witness from explicit proof translations; raises if either map is ill-typed."""
        return FibreIso(self.vertical(source, target, fwd), self.vertical(target, source, bwd))

    def iso_witness_problems(self, source: Predicate, target: Predicate,
                             fwd: Callable[[El, El], El], bwd: Callable[[El, El], El]) -> list[str]:
        """Check explicit proof translations form a fibre iso, in one pass.

        Equivalent to ``fibre_iso(...).problems(self)``: at each ``x`` the forward
        map must land in the target fiber, be undone by ``bwd``, and the fibers
        must have equal size (so ``fwd`` is onto and ``bwd`` is its inverse).
        """
        if source.carrier != target.carrier:
            return ["carriers differ"]
        for x in source.carrier:
            ps, qs = source.proofs(x), target.proofs(x)
            if len(ps) != len(qs):
                return [f"fibers at {render(x)} have sizes {len(ps)} and {len(qs)}"]
            for p in ps:
                q = fwd(x, p)
                if q not in qs:
                    return [f"forward image {render(q)} is not a target proof at {render(x)}"]
                if bwd(x, q) != p:
                    return [f"backward . forward moves {render(p)} at {render(x)}"]
        return []

    def comprehend_map(self, m: PredMorphism) -> FinFn:
        """Action of comprehension on morphisms."""
        raise NotImplementedError

    def inv_image_map(self, top: FinFn, bottom: FinFn, f: FinFn, g: FinFn,
                      source: Predicate | None = None, target: Predicate | None = None) -> PredMorphism:
        """Action of the inverse-image functor on a commuting square ``g . top = bottom . f``.

        ``source``/``target`` may pass in already computed inverse images of ``f``/``g``.
        """
        raise NotImplementedError

    # -- opreindexing is left adjoint to reindexing ------------------------
    def sigma_tag(self, x: El, p: El) -> El:
        """The proof of ``Sigma_f P`` at ``f x`` contributed by proof ``p`` of ``x``."""
        raise NotImplementedError

    def sigma_transpose(self, f: FinFn, p: Predicate, q: Predicate, m: PredMorphism) -> PredMorphism:
        """``Sigma_f P -> Q``  to  ``P -> f* Q``."""
        return self.vertical(p, self.reindex(f, q),
                             lambda x, r: m.proof_map[(f.table[x], self.sigma_tag(x, r))])

    def sigma_untranspose(self, f: FinFn, p: Predicate, q: Predicate, m: PredMorphism) -> PredMorphism:
        """``P -> f* Q``  to  ``Sigma_f P -> Q``."""
        raise NotImplementedError

    # -- the truth / comprehension adjunction ------------------------------
    def dagger(self, h: FinFn, p: Predicate) -> PredMorphism:
        raise NotImplementedError

    def sharp(self, m: PredMorphism) -> FinFn:
        raise NotImplementedError

    def counit(self, p: Predicate) -> PredMorphism:
        raise NotImplementedError

    def _check_truth_source(self, m: PredMorphism):
        if m.source != self.truth(m.source.carrier):
            raise PredicateError("transposition needs a morphism out of a truth predicate")

    def __repr__(self):
        return f"<fibration {self.name}>"


class FamiliesFibration(Fibration):
    name = "fam"

    def truth(self, xs):
        return Family(xs, {x: UNIT_SET for x in xs})

    def make(self, carrier, proofs):
        return Family(carrier, {x: proofs(x) for x in carrier})

    @functools.lru_cache(maxsize=16384)
    def comprehend(self, p):
        return FinSet._sorted(tuple(DPair(x, q) for x in p.carrier for q in p.fiber[x]))

    @functools.lru_cache(maxsize=16384)
    def proj(self, p):
        tot = self.comprehend(p)
        return FinFn(tot, p.carrier, {d: d.fst for d in tot})

    def opreindex(self, f, p):
        if f.dom != p.carrier:
            raise PredicateError("opreindexing function's domain is not the predicate's carrier")
        buckets: dict[El, list[El]] = {y: [] for y in f.cod}
        for x in p.carrier:
            buckets[f.table[x]].extend(Pair(x, q) for q in p.fiber[x])
        # carrier and fibers are visited in order, so every bucket is already sorted
        return Family(f.cod, {y: FinSet._sorted(tuple(v)) for y, v in buckets.items()})

    def predicates(self, carrier, max_fiber, up_to_relabelling=False):
        proof_pool = [FinSet(_proof_atoms(k)) for k in range(max_fiber + 1)]
        xs = carrier.elements
        for sizes in _size_vectors(range(max_fiber + 1), len(xs), up_to_relabelling):
            yield Family(carrier, {x: proof_pool[k] for x, k in zip(xs, sizes)})

    def comprehend_map(self, m):
        src, tgt = self.comprehend(m.source), self.comprehend(m.target)
        b, pm = m.base.table, m.proof_map
        return FinFn(src, tgt, {d: DPair(b[d.fst], pm[(d.fst, d.snd)]) for d in src})

    def inv_image_map(self, top, bottom, f, g, source=None, target=None):
        src = source or self.opreindex(f, self.truth(f.dom))
        tgt = target or self.opreindex(g, self.truth(g.dom))
        t = top.table
        return self.morphism(src, tgt, bottom, lambda y, q: Pair(t[q.fst], q.snd))

    def sigma_tag(self, x, p):
        return Pair(x, p)

    def sigma_untranspose(self, f, p, q, m):
        return self.vertical(self.opreindex(f, p), q, lambda y, t: m.proof_map[(t.fst, t.snd)])

    def dagger(self, h, p):
        if h.cod != self.comprehend(p):
            raise PredicateError("codomain of the transposed function is not the comprehension")
        base = compose_fn(self.proj(p), h)
        return self.morphism(self.truth(h.dom), p, base, lambda y, _: h.table[y].snd)

    def sharp(self, m):
        self._check_truth_source(m)
        b, pm = m.base.table, m.proof_map
        return FinFn(m.source.carrier, self.comprehend(m.target),
                     {y: DPair(b[y], pm[(y, UNIT)]) for y in m.source.carrier})

    def counit(self, p):
        tot = self.comprehend(p)
        return self.morphism(self.truth(tot), p, self.proj(p), lambda d, _: d.snd)


class SubobjectFibration(Fibration):
    name = "sub"

    def truth(self, xs):
        return Subobject(xs, xs)

    def make(self, carrier, proofs):
        return Subobject(carrier, FinSet._sorted(tuple(x for x in carrier if proofs(x))))

    def comprehend(self, p):
        return p.members

    def proj(self, p):
        return FinFn(p.members, p.carrier, {x: x for x in p.members})

    def opreindex(self, f, p):
        if f.dom != p.carrier:
            raise PredicateError("opreindexing function's domain is not the predicate's carrier")
        return Subobject(f.cod, FinSet(f.table[x] for x in p.members))

    def predicates(self, carrier, max_fiber, up_to_relabelling=False):
        xs = carrier.elements
        if max_fiber == 0:
            yield Subobject(carrier, EMPTY)
            return
        for bits in _size_vectors((False, True), len(xs), up_to_relabelling):
            yield Subobject(carrier, FinSet._sorted(tuple(x for x, b in zip(xs, bits) if b)))

    def comprehend_map(self, m):
        return FinFn(m.source.members, m.target.members, {x: m.base.table[x] for x in m.source.members})

    def inv_image_map(self, top, bottom, f, g, source=None, target=None):
        src = source or self.opreindex(f, self.truth(f.dom))
        tgt = target or self.opreindex(g, self.truth(g.dom))
        return self.morphism(src, tgt, bottom, lambda y, q: q)

    def sigma_tag(self, x, p):
        return UNIT

    def sigma_untranspose(self, f, p, q, m):
        return self.vertical(self.opreindex(f, p), q, lambda y, t: UNIT)

    def dagger(self, h, p):
        if h.cod != p.members:
            raise PredicateError("codomain of the transposed function is not the comprehension")
        base = compose_fn(self.proj(p), h)
        return self.morphism(self.truth(h.dom), p, base, lambda y, q: q)

    def sharp(self, m):
        self._check_truth_source(m)
        return FinFn(m.source.carrier, m.target.members, dict(m.base.table))

    def counit(self, p):
        return self.morphism(self.truth(p.members), p, self.proj(p), lambda x, q: q)


def _proof_atoms(k: int) -> list[El]:
    return [Atom(f"p{i}") for i in range(k)]


def _size_vectors(choices, n, nondecreasing):
    if nondecreasing:
        return itertools.combinations_with_replacement(choices, n)
    return itertools.product(choices, repeat=n)


FAMILIES = FamiliesFibration()
SUBOBJECTS = SubobjectFibration()


def fibration(name: str) -> Fibration:
    try:
        return {"fam": FAMILIES, "families": FAMILIES, "sub": SUBOBJECTS, "subobject": SUBOBJECTS}[name]
    except KeyError:
        raise ValueError(f"unknown fibration {name!r}") from None


def flavour_of(p: Predicate) -> Fibration:
    return FAMILIES if isinstance(p, Family) else SUBOBJECTS
