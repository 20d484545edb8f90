"""Exhaustive law checks over small instances of both fibrations.

Every check sweeps a bounded space in a fixed order and records, per law, the
number of instances examined, the counterexamples found and the instances
skipped because an object would exceed ``max_object_size`` or an enumeration
would exceed ``max_enumeration``. Isomorphisms are checked by building
explicit :class:`~fibind.fibrations.FibreIso` witnesses.
"""
from __future__ import annotations

import itertools
import json
import random
import string
from dataclasses import dataclass, fields
from typing import Callable, Iterable

from .core import (
    UNIT, Atom, DPair, El, FinFn, FinSet, Inl, Inr, MuV, Pair, SeqV, SetV, all_functions, compose_fn,
    functions_up_to_relabelling,
)
from .fibrations import Family, Fibration, PredMorphism, Predicate, fibration
from .functors import (
    UNIT_SET, BoundConfig, Const, FunctorCode, IdC, ProdC, SumC, apply_object, enumerate_codes, fmap_with,
    has_pow, is_polynomial, object_size, positions,
)
from .induction import (
    StepAlgebra, TermAlgebra, fold_term, genind, in_algebra, in_term, ind_direct, out_term, phi,
    psi_algebra, psi_algebra_direct, terms_up_to,
)
from .lifting import (
    arrow_lift, generic_lift, hj_lift, lift_morphism, pointwise_family, product_of_predicates,
    sum_of_predicates, truth_iso,
)
from .registry import HS_CODE, NAT_CODE, ROSE_CODE, hs_rank, nat, nat_succ_chain, rose_size, truth_step

MAX_KEPT_FAILURES = 10


@dataclass(frozen=True)
class LawConfig:
    max_base_size: int = 3
    max_fiber_size: int = 2
    max_code_depth: int = 2
    seq_len_bound: int = 3
    fibration: str = "fam"
    # sizes of the constant sets codes are built from
    constant_sizes: tuple[int, ...] = (0, 1)
    max_object_size: int = 4096
    # caps on enumerated algebras / hom-sets in the algebra checks
    max_enumeration: int = 64
    # carriers used where whole hom-sets of predicates are enumerated
    max_hom_base_size: int = 2
    seed: int = 0
    nat_max: int = 20
    rose_samples: int = 1000
    rose_depth: int = 4
    hs_rank: int = 3
    # sweep predicates only up to permutations of their carrier
    up_to_relabelling: bool = True

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if any(isinstance(n, int) and n < 0 for n in (v if isinstance(v, tuple) else (v,))):
                raise ValueError(f"{f.name} must be nonnegative")
        fibration(self.fibration)

    @property
    def bound(self) -> BoundConfig:
        return BoundConfig(self.seq_len_bound, self.max_object_size)

    @property
    def constants(self) -> tuple[FinSet, ...]:
        return tuple(constant_set(k) for k in self.constant_sizes)


@dataclass(frozen=True)
class LawResult:
    name: str
    fibration: str
    instances: int
    failures: tuple[str, ...]
    failure_count: int
    skipped: int

    @property
    def ok(self) -> bool:
        return self.failure_count == 0


@dataclass(frozen=True)
class LawReport:
    results: tuple[LawResult, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failure_count(self) -> int:
        return sum(r.failure_count for r in self.results)

    def __add__(self, other: "LawReport") -> "LawReport":
        return LawReport(self.results + other.results)

    def get(self, name: str, fib: str | None = None) -> LawResult:
        for r in self.results:
            if r.name == name and (fib is None or r.fibration == fib):
                return r
        raise KeyError(name)

    def to_text(self) -> str:
        w = max((len(r.name) for r in self.results), default=0)
        lines = []
        for r in self.results:
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.fibration:<3}  {r.name:<{w}}  "
                         f"instances={r.instances} failures={r.failure_count} skipped={r.skipped}")
            lines.extend(f"      counterexample: {d}" for d in r.failures)
        total = sum(r.instances for r in self.results)
        lines.append(f"{len(self.results)} laws, {total} instances, {self.failure_count} failures")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "laws": [
                {"name": r.name, "fibration": r.fibration, "instances": r.instances,
                 "failures": list(r.failures), "failure_count": r.failure_count, "skipped": r.skipped}
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


class _Law:
    """Mutable tally for one law while it is being swept."""

    def __init__(self, name: str, fib: str):
        self.name, self.fib = name, fib
        self.instances = self.failure_count = self.skipped = 0
        self.failures: list[str] = []

    def fail(self, what: str):
        self.failure_count += 1
        if len(self.failures) < MAX_KEPT_FAILURES:
            self.failures.append(what)

    def check(self, ok: bool, what: Callable[[], str], n: int = 1):
        self.instances += n
        if not ok:
            self.fail(what())

    def attempt(self, body: Callable[[], bool | None], what: Callable[[], str], n: int = 1):
        """Run one instance; a false result or any exception is a counterexample."""
        self.instances += n
        try:
            ok = body()
        except Exception as e:  # noqa: BLE001 - every error is a counterexample
            self.fail(f"{what()}: {type(e).__name__}: {e}")
            return
        if ok is False:
            self.fail(what())

    def result(self) -> LawResult:
        return LawResult(self.name, self.fib, self.instances, tuple(self.failures), self.failure_count, self.skipped)


def _report(*laws: _Law) -> LawReport:
    return LawReport(tuple(l.result() for l in laws))


# ---------------------------------------------------------------------------
# sweep spaces


def base(n: int, prefix: str = "") -> FinSet:
    names = string.ascii_lowercase[:n] if n <= 26 else [f"x{i}" for i in range(n)]
    return FinSet(Atom(prefix + c) for c in names)


def constant_set(k: int) -> FinSet:
    """The empty set, the unit set, or ``{k0, ..., k(k-1)}``."""
    return UNIT_SET if k == 1 else FinSet(Atom(f"k{i}") for i in range(k))


def codes(cfg: LawConfig, polynomial: bool = False) -> list[FunctorCode]:
    return list(enumerate_codes(cfg.max_code_depth, cfg.constants, polynomial))


def _preds(fib: Fibration, n: int, cfg: LawConfig) -> list[Predicate]:
    return list(fib.predicates(base(n), cfg.max_fiber_size, cfg.up_to_relabelling))


def _fits(code: FunctorCode, n: int, cfg: LawConfig) -> bool:
    return object_size(code, n, cfg.bound, cfg.max_object_size) <= cfg.max_object_size


def _tot_size(fib: Fibration, p: Predicate) -> int:
    return len(fib.comprehend(p))


def _show(p) -> str:
    return repr(p)


# ---------------------------------------------------------------------------
# truth / comprehension, Sigma / reindexing


def check_adjunctions(cfg: LawConfig, fib: Fibration | None = None) -> LawReport:
    fib = fib or fibration(cfg.fibration)
    fname = fib.name
    adj = _Law("truth-comprehension-adjunction", fname)
    counit = _Law("dagger-counit", fname)
    nat = _Law("dagger-naturality", fname)
    sig = _Law("sigma-reindex-adjunction", fname)
    small = min(cfg.max_base_size, cfg.max_hom_base_size)

    for nx in range(cfg.max_base_size + 1):
        for p in _preds(fib, nx, cfg):
            tot = fib.comprehend(p)
            counit.attempt(lambda: fib.dagger(identity(tot), p) == fib.counit(p),
                           lambda: f"dagger(id) differs from the counit at {_show(p)}")
            for ny in range(cfg.max_base_size + 1):
                ys = base(ny, "y")
                adj.attempt(lambda: _transposition_bijective(fib, ys, p),
                            lambda: f"dagger/sharp not inverse bijections for Y={ys} at {_show(p)}")

    for nx in range(small + 1):
        for p in _preds(fib, nx, cfg):
            tot = fib.comprehend(p)
            # vertical maps fix the carrier, so q is not reduced up to relabelling
            vert = [(q, list(fib.fibre_homs(p, q))) for q in fib.predicates(p.carrier, cfg.max_fiber_size)]
            for ny in range(small + 1):
                ys = base(ny, "y")
                for h in all_functions(ys, tot):
                    dh = fib.dagger(h, p)
                    for nw in range(small + 1):
                        for g in all_functions(base(nw, "w"), ys):
                            nat.attempt(lambda: fib.dagger(compose_fn(h, g), p) == fib.compose(dh, fib.truth_map(g)),
                                        lambda: f"dagger(h . g) != dagger(h) . K1 g for h={h}, g={g}")
                    for q, vs in vert:
                        for v in vs:
                            nat.attempt(lambda: fib.dagger(compose_fn(fib.comprehend_map(v), h), q)
                                        == fib.compose(v, dh),
                                        lambda: f"dagger not natural in the predicate for h={h}, v={v}")

    for nx in range(small + 1):
        xs = base(nx)
        ps = _preds(fib, nx, cfg)
        for ny in range(small + 1):
            ys = base(ny, "y")
            qs = list(fib.predicates(ys, cfg.max_fiber_size))
            for f in all_functions(xs, ys):
                for p in ps:
                    for q in qs:
                        sig.attempt(lambda: _sigma_bijective(fib, f, p, q),
                                    lambda: f"Sigma_f -| f* fails for f={f}, P={_show(p)}, Q={_show(q)}")
    return _report(adj, counit, nat, sig)


def identity(xs: FinSet) -> FinFn:
    return FinFn(xs, xs, {x: x for x in xs})


def _transposition_bijective(fib, ys, p) -> bool:
    tot = fib.comprehend(p)
    hs = list(all_functions(ys, tot))
    ms = list(fib.homs(fib.truth(ys), p))
    if len(hs) != len(ms):
        return False
    daggers = set()
    for h in hs:
        m = fib.dagger(h, p)
        if fib.sharp(m) != h:
            return False
        daggers.add(_morph_key(m))
    for m in ms:
        if fib.dagger(fib.sharp(m), p) != m:
            return False
    return daggers == {_morph_key(m) for m in ms}


def _sigma_bijective(fib, f, p, q) -> bool:
    s = fib.opreindex(f, p)
    fq = fib.reindex(f, q)
    left = list(fib.fibre_homs(s, q))
    right = list(fib.fibre_homs(p, fq))
    if len(left) != len(right):
        return False
    images = set()
    for m in left:
        t = fib.sigma_transpose(f, p, q, m)
        if fib.sigma_untranspose(f, p, q, t) != m:
            return False
        images.add(_morph_key(t))
    for n in right:
        if fib.sigma_transpose(f, p, q, fib.sigma_untranspose(f, p, q, n)) != n:
            return False
    return images == {_morph_key(n) for n in right}


def _morph_key(m: PredMorphism):
    return tuple(m.base.table.values()), tuple(sorted(m.proof_map.items()))


# ---------------------------------------------------------------------------
# truth preservation


def check_truth_preservation(cfg: LawConfig, fib: Fibration | None = None) -> LawReport:
    fib = fib or fibration(cfg.fibration)
    law = _Law("truth-preservation", fib.name)
    b = cfg.bound
    for code in codes(cfg):
        for n in range(cfg.max_base_size + 1):
            if not _fits(code, n, cfg):
                law.skipped += 1
                continue
            xs = base(n)

            def body():
                iso = truth_iso(fib, code, xs, b)
                problems = iso.problems(fib)
                if iso.forward.target != fib.truth(apply_object(code, xs, b)):
                    problems.append("target is not the truth predicate on F X")
                if problems:
                    raise AssertionError("; ".join(problems))

            law.attempt(body, lambda: f"{code} over |X|={n}")
    return _report(law)


# ---------------------------------------------------------------------------
# Phi / Psi


def _pm_key(m: PredMorphism, slots) -> tuple:
    return tuple(m.base.table.values()), tuple(m.proof_map[s] for s in slots)


def _compose_key(g: PredMorphism, f: PredMorphism, slots) -> tuple:
    """Key of ``g . f`` without building the composite."""
    fb, gb, fp, gp = f.base.table, g.base.table, f.proof_map, g.proof_map
    return (tuple(gb[fb[x]] for x in f.source.carrier),
            tuple(gp[(fb[x], fp[(x, p)])] for x, p in slots))


def _fn_compose_key(g: FinFn, f: FinFn) -> tuple:
    gt = g.table
    return tuple(gt[v] for v in f.table.values())


def _slots(p: Predicate):
    return [(x, q) for x in p.carrier for q in p.proofs(x)]


def _iff_witness(lefts, rights):
    """Find ``(i, j)`` with ``(a_i == c_j) != (b_i == d_j)``, or ``None``.

    ``lefts`` holds pairs ``(a, b)`` and ``rights`` pairs ``(c, d)``; the search
    is linear by grouping on each component.
    """
    by_c: dict = {}
    by_d: dict = {}
    for j, (c, d) in enumerate(rights):
        by_c.setdefault(c, {}).setdefault(d, j)
        by_d.setdefault(d, {}).setdefault(c, j)
    for i, (a, b) in enumerate(lefts):
        for other, group in ((b, by_c.get(a)), (a, by_d.get(b))):
            if group:
                for val, j in group.items():
                    if val != other:
                        return i, j
    return None


def _hom_count(p_src: Predicate, p_tgt: Predicate, limit: int) -> int:
    """Size of the hom-set ``p_src -> p_tgt`` (capped at ``limit + 1``)."""
    total = 1
    for y in p_src.carrier:
        k = len(p_src.proofs(y))
        total *= sum(len(p_tgt.proofs(x)) ** k for x in p_tgt.carrier)
        if total > limit:
            return limit + 1
    return total


def check_phi_psi_adjunction(cfg: LawConfig, fib: Fibration | None = None,
                             psi_algebra: Callable = psi_algebra) -> LawReport:
    fib = fib or fibration(cfg.fibration)
    fname = fib.name
    iff = _Law("phi-psi-adjunction", fname)
    carriers = _Law("phi-psi-carriers", fname)
    closed = _Law("psi-closed-form", fname)
    functor = _Law("phi-preserves-algebra-morphisms", fname)
    b = cfg.bound
    cap = cfg.max_enumeration
    small = min(cfg.max_base_size, cfg.max_hom_base_size)
    # every algebra on the domain is enumerated, so the domain may be relabelled
    maps = functions_up_to_relabelling if cfg.up_to_relabelling else all_functions

    for code in codes(cfg, polynomial=True):
        alg: dict[int, list] = {}
        for n in range(small + 1):
            xs = base(n)
            fx = apply_object(code, xs, b)
            if len(fx) > cfg.max_object_size or n ** len(fx) > cap:
                alg[n] = None
                continue
            pairs = []
            for k in all_functions(fx, xs):
                m = phi(code, k, fib, b)
                pairs.append((k, m))
                carriers.check(m.target == fib.truth(xs) and m.source == generic_lift(fib, code, fib.truth(xs), b),
                               lambda: f"phi({k}) for {code} is not an algebra on truth(X)")
            alg[n] = pairs

        # Phi is a functor: algebra morphisms go to lifted algebra morphisms, and only those
        for n1, n2 in itertools.product(range(small + 1), repeat=2):
            if alg[n1] is None or alg[n2] is None:
                functor.skipped += 1
                continue
            x1, x2 = base(n1), base(n2)
            for g in maps(x1, x2):
                fg = arrow_lift(code, g, b)
                kg = fib.truth_map(g)
                lg = lift_morphism(fib, code, kg, b)
                src_slots = _slots(generic_lift(fib, code, fib.truth(x1), b))
                lefts = [(_fn_compose_key(g, k1), _compose_key(kg, m1, src_slots)) for k1, m1 in alg[n1]]
                rights = [(_fn_compose_key(k2, fg), _compose_key(m2, lg, src_slots)) for k2, m2 in alg[n2]]
                w = _iff_witness(lefts, rights)
                functor.check(w is None, lambda: (f"{code}: g={g} with k1={alg[n1][w[0]][0]}, "
                                                  f"k2={alg[n2][w[1]][0]}"),
                              n=len(lefts) * len(rights))

        for nz in range(small + 1):
            for p in _preds(fib, nz, cfg):
                lifted = generic_lift(fib, code, p, b)
                if _hom_count(lifted, p, cap) > cap:
                    iff.skipped += 1
                    continue
                tot = fib.comprehend(p)
                js = list(fib.homs(lifted, p))
                psis = []
                for j in js:
                    try:
                        s = psi_algebra(fib, code, j, b)
                    except Exception as e:  # noqa: BLE001
                        carriers.fail(f"psi failed on j={j}: {type(e).__name__}: {e}")
                        s = None
                    psis.append(s)
                    if s is not None:
                        carriers.check(s.dom == apply_object(code, tot, b) and s.cod == tot,
                                       lambda: f"psi(j) for {code} is not an algebra on the comprehension; j={j}")
                        closed.attempt(lambda: s == psi_algebra_direct(fib, code, j, b),
                                       lambda: f"psi(j) differs from its closed form for {code}, j={j}")
                for n in range(small + 1):
                    if alg[n] is None:
                        iff.skipped += 1
                        continue
                    xs = base(n)
                    truth_lift_slots = _slots(generic_lift(fib, code, fib.truth(xs), b))
                    for f in maps(xs, tot):
                        df = fib.dagger(f, p)
                        ff = arrow_lift(code, f, b)
                        lf = lift_morphism(fib, code, df, b)
                        lefts = [(_fn_compose_key(f, k), _compose_key(df, m, truth_lift_slots)) for k, m in alg[n]]
                        rights = []
                        for j, s in zip(js, psis):
                            c = None if s is None else tuple(s.table.get(v) for v in ff.table.values())
                            rights.append((c, _compose_key(j, lf, truth_lift_slots)))
                        w = _iff_witness(lefts, rights)
                        iff.check(w is None, lambda: (f"{code}, P={_show(p)}: f={f}, k={alg[n][w[0]][0]}, "
                                                      f"j={js[w[1]]}"),
                                  n=len(lefts) * len(rights))
    return _report(iff, carriers, closed, functor)


# ---------------------------------------------------------------------------
# liftings


def _elem(fib: Fibration, x: El, p: El) -> El:
    """The comprehension element for proof ``p`` of ``x``."""
    return DPair(x, p) if _is_fam(fib) else x


def _is_fam(fib: Fibration) -> bool:
    return isinstance(fib.truth(FinSet()), Family)


def _hj_proof(code: FunctorCode, z: El) -> El:
    """HJ proof carried by an element ``z`` of ``F{P}`` (families)."""
    match code:
        case Const():
            return UNIT
        case IdC():
            return z.snd
        case SumC(l, r):
            return Inl(_hj_proof(l, z.value)) if isinstance(z, Inl) else Inr(_hj_proof(r, z.value))
        case ProdC(l, r):
            return Pair(_hj_proof(l, z.fst), _hj_proof(r, z.snd))
    raise TypeError(code)


def _hj_element(code: FunctorCode, y: El, q: El) -> El:
    """Inverse of :func:`_hj_proof`: the element of ``F{P}`` above ``y`` carrying ``q``."""
    match code:
        case Const():
            return y
        case IdC():
            return DPair(y, q)
        case SumC(l, r):
            if isinstance(y, Inl):
                return Inl(_hj_element(l, y.value, q.value))
            return Inr(_hj_element(r, y.value, q.value))
        case ProdC(l, r):
            return Pair(_hj_element(l, y.fst, q.fst), _hj_element(r, y.snd, q.snd))
    raise TypeError(code)


def _assert_iso(fib, src, tgt, fwd, bwd):
    problems = fib.iso_witness_problems(src, tgt, fwd, bwd)
    if problems:
        raise AssertionError("; ".join(problems))


def check_lifting_algebra(cfg: LawConfig, fib: Fibration | None = None) -> LawReport:
    fib = fib or fibration(cfg.fibration)
    fname = fib.name
    fam = _is_fam(fib)
    const = _Law("constant-lifting", fname)
    ident = _Law("identity-lifting", fname)
    coprod = _Law("coproduct-lifting", fname)
    prod = _Law("product-lifting", fname)
    hj = _Law("hj-coincidence", fname)
    pointwise = _Law("pointwise-coincidence", fname)
    inhabit = _Law("pow-inhabitation", fname)
    b = cfg.bound
    tag = fib.sigma_tag

    all_codes = codes(cfg)
    constants = sorted(set(cfg.constants) | {FinSet(), UNIT_SET, constant_set(2)}, key=len)

    for n in range(cfg.max_base_size + 1):
        for p in _preds(fib, n, cfg):
            for s in constants:
                code = Const(s)
                const.attempt(lambda: _assert_iso(
                    fib, generic_lift(fib, code, p, b), fib.truth(s),
                    lambda y, t: UNIT, lambda y, _: tag(y, UNIT)),
                    lambda: f"K{s} at {_show(p)}")
            ident.attempt(lambda: _assert_iso(
                fib, generic_lift(fib, IdC(), p, b), p,
                (lambda x, t: t.fst.snd) if fam else (lambda x, t: UNIT),
                lambda x, q: tag(_elem(fib, x, q), UNIT)),
                lambda: f"identity at {_show(p)}")

            for code in all_codes:
                if not _fits(code, n, cfg) or not _fits(code, _tot_size(fib, p), cfg):
                    for law, applies in ((coprod, isinstance(code, SumC)), (prod, isinstance(code, ProdC)),
                                         (hj, is_polynomial(code)), (inhabit, fam and has_pow(code)),
                                         (pointwise, not (fam and has_pow(code)))):
                        law.skipped += applies
                    continue
                lifted = generic_lift(fib, code, p, b)
                if isinstance(code, (SumC, ProdC)):
                    _check_binary(fib, code, p, lifted, coprod if isinstance(code, SumC) else prod, b)
                if is_polynomial(code):
                    hj.attempt(lambda: _assert_iso(
                        fib, lifted, hj_lift(code, p, fib),
                        (lambda y, t: _hj_proof(code, t.fst)) if fam else (lambda y, t: UNIT),
                        (lambda y, q: Pair(_hj_element(code, y, q), UNIT)) if fam else (lambda y, q: UNIT)),
                        lambda: f"{code} at {_show(p)}")
                if fam and has_pow(code):
                    inhabit.attempt(lambda: all(
                        (len(lifted.proofs(y)) > 0) == all(len(p.proofs(x)) > 0 for x in positions(code, y))
                        for y in lifted.carrier), lambda: f"{code} at {_show(p)}")
                elif fam:
                    pointwise.attempt(lambda: _assert_iso(
                        fib, lifted, pointwise_family(code, p, b),
                        lambda y, t: t.fst, lambda y, q: Pair(q, UNIT)),
                        lambda: f"{code} at {_show(p)}")
                else:
                    pointwise.attempt(lambda: _assert_iso(
                        fib, lifted,
                        fib.make(lifted.carrier, lambda y: all(len(p.proofs(x)) > 0 for x in positions(code, y))),
                        lambda y, t: UNIT, lambda y, q: UNIT),
                        lambda: f"{code} at {_show(p)}")
    return _report(const, ident, coprod, prod, hj, pointwise, *([inhabit] if fam else []))


def _sum_fwd(y, t):
    z = t.fst
    return (Inl if isinstance(z, Inl) else Inr)(Pair(z.value, UNIT))


def _sum_bwd(y, q):
    return Pair((Inl if isinstance(q, Inl) else Inr)(q.value.fst), UNIT)


def _prod_fwd(y, t):
    return Pair(Pair(t.fst.fst, UNIT), Pair(t.fst.snd, UNIT))


def _prod_bwd(y, q):
    return Pair(Pair(q.fst.fst, q.snd.fst), UNIT)


def _unit_proof(y, q):
    return UNIT


def _check_binary(fib, code, p, lifted, law, b):
    """A sum (product) code lifts to the sum (product) of the liftings of its parts."""
    l, r = generic_lift(fib, code.left, p, b), generic_lift(fib, code.right, p, b)
    if isinstance(code, SumC):
        target, fwd, bwd = sum_of_predicates(fib, l, r), _sum_fwd, _sum_bwd
    else:
        target, fwd, bwd = product_of_predicates(fib, l, r), _prod_fwd, _prod_bwd
    if not _is_fam(fib):
        fwd = bwd = _unit_proof
    law.attempt(lambda: _assert_iso(fib, lifted, target, fwd, bwd), lambda: f"{code} at {_show(p)}")


# ---------------------------------------------------------------------------
# induction


def random_rose(rng: random.Random, depth: int, in_term=in_term) -> MuV:
    """A random rose tree of depth at most ``depth`` with at most three children per node."""
    if depth == 0:
        return in_term(ROSE_CODE, SeqV(()))
    kids = [random_rose(rng, rng.randint(0, depth - 1), in_term) for _ in range(rng.randint(0, 3))]
    return in_term(ROSE_CODE, SeqV(kids))


def raw_set_trees(rank: int, width: int = 2) -> list[list]:
    """Nested Python lists: every list of at most ``width`` earlier trees, up to ``rank``."""
    levels = [[[]]]
    for _ in range(rank):
        pool = [t for lvl in levels for t in lvl]
        nxt = [list(c) for k in range(width + 1) for c in itertools.product(pool, repeat=k)]
        levels = [nxt]
    return levels[0]


def build_hs(tree: list, in_term=in_term) -> MuV:
    """Build a term from a raw tree through ``in_term`` (duplicates and order as given)."""
    return in_term(HS_CODE, SetV(tuple(build_hs(c, in_term) for c in tree)))


def induction_subjects(cfg: LawConfig, in_term=in_term) -> list[tuple[str, FunctorCode, list[MuV]]]:
    rng = random.Random(cfg.seed)
    nats = [nat(n) for n in range(cfg.nat_max + 1)]
    roses = [random_rose(rng, cfg.rose_depth, in_term) for _ in range(cfg.rose_samples)]
    hss = list(terms_up_to(HS_CODE, cfg.hs_rank, cfg.bound, in_term))
    raw = [build_hs(t, in_term) for t in raw_set_trees(min(cfg.hs_rank, 3))]
    return [("Nat", NAT_CODE, nats), ("Rose", ROSE_CODE, roses), ("HS", HS_CODE, hss), ("HS-raw", HS_CODE, raw)]


STEPS = {"Nat": nat_succ_chain, "Rose": rose_size, "HS": hs_rank, "HS-raw": hs_rank}


def check_induction_soundness(cfg: LawConfig, in_term=in_term) -> LawReport:
    sound = _Law("induction-soundness", "-")
    direct = _Law("genind-matches-direct", "-")
    truth = _Law("truth-step-unit", "-")
    init = _Law("fold-initiality", "-")
    unique = _Law("fold-uniqueness", "-")

    for name, code, terms in induction_subjects(cfg, in_term):
        steps = [StepAlgebra(code, STEPS[name], name), StepAlgebra(code, truth_step, "truth")]
        for t in terms:
            for step in steps:
                res = []
                sound.attempt(lambda: res.append(genind(code, step, t, in_term)),
                              lambda: f"{name} term {t} with step {step.name}")
                if not res:
                    continue
                direct.attempt(lambda: res[0] == ind_direct(code, step, t),
                               lambda: f"{name} term {t} with step {step.name}")
                if step.name == "truth":
                    truth.check(res[0].proof == UNIT, lambda: f"{name} term {t} got {res[0].proof}")
            init.attempt(lambda: fold_term(in_algebra(code), t) == t, lambda: f"{name} term {t}")

    for code, depth in ((NAT_CODE, 3), (HS_CODE, 2)):
        ts = list(terms_up_to(code, depth, cfg.bound))
        for n in range(min(cfg.max_base_size, cfg.max_hom_base_size) + 1):
            xs = base(n)
            fx = apply_object(code, xs, cfg.bound)
            if n ** len(fx) > cfg.max_enumeration:
                unique.skipped += 1
                continue
            for k in all_functions(fx, xs):
                unique.attempt(lambda: _unique_fold(code, k, ts), lambda: f"{code} with k={k}")
    return _report(sound, direct, truth, init, unique)


def _unique_fold(code, k: FinFn, ts) -> bool:
    """Exactly one map from the truncated term set commutes with ``in`` and ``k``, and it is the fold."""
    xs = k.cod.elements
    alg = TermAlgebra(code, "k", lambda layer: k.table[layer])
    folded = {t: fold_term(alg, t) for t in ts}
    found = 0
    for vals in itertools.product(xs, repeat=len(ts)):
        h = dict(zip(ts, vals))
        if all(h[t] == k.table[fmap_with(code, h.__getitem__, out_term(t))] for t in ts):
            found += 1
            if h != folded:
                return False
    return found == 1


# ---------------------------------------------------------------------------


FIBRATION_CHECKS = (check_adjunctions, check_truth_preservation, check_phi_psi_adjunction, check_lifting_algebra)


def run_laws(cfg: LawConfig = LawConfig(), fibrations: Iterable[str] | None = None) -> LawReport:
    names = list(fibrations) if fibrations is not None else [cfg.fibration]
    report = LawReport()
    for name in names:
        fib = fibration(name)
        for check in FIBRATION_CHECKS:
            report = report + check(cfg, fib)
    return report + check_induction_soundness(cfg)
