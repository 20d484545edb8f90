"""Functor codes: object action, morphism action, and the container view.

A :data:`FunctorCode` is a small syntax tree. Its object action enumerates a
:class:`FinSet` (``SeqC`` truncated at ``BoundConfig.seq_len_bound``); its
morphism action maps single values, so term-level code can map over
unbounded sequences without ever enumerating anything.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, Union

from .core import (
    UNIT, DPair, El, FinFn, FinSet, Inl, Inr, Pair, SeqV, SetV, render, setv,
)
from .errors import DecorationError, ShapeError


@dataclass(frozen=True)
class Const:
    values: FinSet

    def __str__(self):
        return show_code(self)


@dataclass(frozen=True)
class IdC:
    def __str__(self):
        return show_code(self)


@dataclass(frozen=True)
class SumC:
    left: "FunctorCode"
    right: "FunctorCode"

    def __str__(self):
        return show_code(self)


@dataclass(frozen=True)
class ProdC:
    left: "FunctorCode"
    right: "FunctorCode"

    def __str__(self):
        return show_code(self)


@dataclass(frozen=True)
class SeqC:
    arg: "FunctorCode"

    def __str__(self):
        return show_code(self)


@dataclass(frozen=True)
class PowC:
    arg: "FunctorCode"

    def __str__(self):
        return show_code(self)


FunctorCode = Union[Const, IdC, SumC, ProdC, SeqC, PowC]

UNIT_SET = FinSet([UNIT])
ID = IdC()


def show_code(code: FunctorCode, prec: int = 0) -> str:
    """Conventional notation: ``1 + X``, ``K{a, b} x X``, ``List X``, ``Pf (Pf X)``."""
    match code:
        case Const(s):
            if s == UNIT_SET:
                return "1"
            if len(s) == 0:
                return "0"
            return "K{" + ", ".join(render(v) for v in s) + "}"
        case IdC():
            return "X"
        # sums and products associate to the right
        case SumC(l, r):
            out, p = f"{show_code(l, 2)} + {show_code(r, 1)}", 1
        case ProdC(l, r):
            out, p = f"{show_code(l, 3)} x {show_code(r, 2)}", 2
        case SeqC(a):
            out, p = f"List {show_code(a, 4)}", 3
        case PowC(a):
            out, p = f"Pf {show_code(a, 4)}", 3
        case _:
            raise TypeError(code)
    return f"({out})" if p < prec else out


@dataclass(frozen=True)
class BoundConfig:
    """Truncation and enumeration caps.

    ``max_object_size`` caps the size of any object enumerated during a law
    sweep; instances above it are skipped and counted, never silently passed.
    """

    seq_len_bound: int = 3
    max_object_size: int = 4096

    def __post_init__(self):
        if self.seq_len_bound < 0 or self.max_object_size < 0:
            raise ValueError("bounds must be nonnegative")


DEFAULT_BOUND = BoundConfig()


def depth(code: FunctorCode) -> int:
    match code:
        case Const() | IdC():
            return 0
        case SumC(l, r) | ProdC(l, r):
            return 1 + max(depth(l), depth(r))
        case SeqC(a) | PowC(a):
            return 1 + depth(a)
    raise TypeError(code)


@functools.lru_cache(maxsize=None)
def is_polynomial(code: FunctorCode) -> bool:
    match code:
        case Const() | IdC():
            return True
        case SumC(l, r) | ProdC(l, r):
            return is_polynomial(l) and is_polynomial(r)
    return False


@functools.lru_cache(maxsize=None)
def has_pow(code: FunctorCode) -> bool:
    match code:
        case Const() | IdC():
            return False
        case SumC(l, r) | ProdC(l, r):
            return has_pow(l) or has_pow(r)
        case SeqC(a):
            return has_pow(a)
    return True


def object_size(code: FunctorCode, n: int, b: BoundConfig = DEFAULT_BOUND, limit: int | None = None) -> int:
    """Cardinality of ``applyObject(code, X)`` for ``|X| = n``, without enumerating.

    With ``limit`` set, any result above the limit is reported as ``limit + 1``
    (power sets of large objects are astronomically large).
    """
    def cap(v):
        return v if limit is None or v <= limit else limit + 1

    match code:
        case Const(s):
            return cap(len(s))
        case IdC():
            return cap(n)
        case SumC(l, r):
            return cap(object_size(l, n, b, limit) + object_size(r, n, b, limit))
        case ProdC(l, r):
            return cap(object_size(l, n, b, limit) * object_size(r, n, b, limit))
        case SeqC(a):
            m = object_size(a, n, b, limit)
            return cap(sum(m ** k for k in range(b.seq_len_bound + 1)))
        case PowC(a):
            m = object_size(a, n, b, limit)
            if limit is not None and m > 64:
                return limit + 1
            return cap(2 ** m)
    raise TypeError(code)


@functools.lru_cache(maxsize=4096)
def apply_object(code: FunctorCode, xs: FinSet, b: BoundConfig = DEFAULT_BOUND) -> FinSet:
    """Object action of ``code`` on a finite set, canonically sorted."""
    match code:
        case Const(s):
            return s
        case IdC():
            return xs
        case SumC(l, r):
            left = apply_object(l, xs, b)
            right = apply_object(r, xs, b)
            return FinSet._sorted(tuple(Inl(v) for v in left) + tuple(Inr(v) for v in right))
        case ProdC(l, r):
            left = apply_object(l, xs, b)
            right = apply_object(r, xs, b)
            return FinSet._sorted(tuple(Pair(u, v) for u in left for v in right))
        case SeqC(a):
            inner = apply_object(a, xs, b).elements
            seqs = [SeqV(t) for k in range(b.seq_len_bound + 1) for t in itertools.product(inner, repeat=k)]
            return FinSet(seqs)
        case PowC(a):
            inner = apply_object(a, xs, b).elements
            subsets = [SetV(c) for k in range(len(inner) + 1) for c in itertools.combinations(inner, k)]
            return FinSet(subsets)
    raise TypeError(f"not a functor code: {code!r}")


def fmap_with(code: FunctorCode, fn: Callable[[El], El], y: El) -> El:
    """Map ``fn`` over the identity positions of ``y``.

    ``PowC`` re-canonicalises the image, so the resulting set may shrink.
    """
    return _mapper(code)(fn, y)


@functools.lru_cache(maxsize=None)
def _mapper(code: FunctorCode) -> Callable[[Callable[[El], El], El], El]:
    """``fmap_with`` specialised to one code, so dispatch happens once per code."""
    match code:
        case Const(s):
            def m(fn, y):
                if y not in s:
                    raise ShapeError(code, y, "not an element of the constant set")
                return y
        case IdC():
            def m(fn, y):
                return fn(y)
        case SumC(l, r):
            ml, mr = _mapper(l), _mapper(r)

            def m(fn, y):
                t = type(y)
                if t is Inl:
                    return Inl(ml(fn, y.value))
                if t is Inr:
                    return Inr(mr(fn, y.value))
                raise ShapeError(code, y, "expected inl or inr")
        case ProdC(l, r):
            ml, mr = _mapper(l), _mapper(r)

            def m(fn, y):
                if type(y) is not Pair:
                    raise ShapeError(code, y, "expected a pair")
                return Pair(ml(fn, y.fst), mr(fn, y.snd))
        case SeqC(a):
            ma = _mapper(a)

            def m(fn, y):
                if type(y) is not SeqV:
                    raise ShapeError(code, y, "expected a sequence")
                return SeqV([ma(fn, v) for v in y.items])
        case PowC(a):
            ma = _mapper(a)

            def m(fn, y):
                if type(y) is not SetV:
                    raise ShapeError(code, y, "expected a set")
                return setv([ma(fn, v) for v in y.items])
        case _:
            raise TypeError(f"not a functor code: {code!r}")
    return m


def fmap_el(code: FunctorCode, f: FinFn, y: El) -> El:
    table = f.table

    def at(x):
        try:
            return table[x]
        except KeyError:
            raise ShapeError(ID, x, "identity position outside the function's domain") from None
    return _mapper(code)(at, y)


def positions(code: FunctorCode, y: El) -> list[El]:
    """Identity-position values of ``y``, left to right (set members in canonical order)."""
    out: list[El] = []
    _positions(code, y, out)
    return out


def _positions(code, y, out):
    match code:
        case Const(s):
            if y not in s:
                raise ShapeError(code, y, "not an element of the constant set")
        case IdC():
            out.append(y)
        case SumC(l, r):
            if isinstance(y, Inl):
                _positions(l, y.value, out)
            elif isinstance(y, Inr):
                _positions(r, y.value, out)
            else:
                raise ShapeError(code, y, "expected inl or inr")
        case ProdC(l, r):
            if not isinstance(y, Pair):
                raise ShapeError(code, y, "expected a pair")
            _positions(l, y.fst, out)
            _positions(r, y.snd, out)
        case SeqC(a):
            if not isinstance(y, SeqV):
                raise ShapeError(code, y, "expected a sequence")
            for v in y.items:
                _positions(a, v, out)
        case PowC(a):
            if not isinstance(y, SetV):
                raise ShapeError(code, y, "expected a set")
            for v in y.items:
                _positions(a, v, out)
        case _:
            raise TypeError(f"not a functor code: {code!r}")


def decorate(code: FunctorCode, y: El, proofs: Sequence[El]) -> El:
    """Pair the i-th position of ``y`` with ``proofs[i]``."""
    it = iter(proofs)

    def pair(x):
        try:
            return DPair(x, next(it))
        except StopIteration:
            raise DecorationError(f"too few proofs ({len(proofs)}) to decorate {y}") from None

    out = fmap_with(code, pair, y)
    if next(it, None) is not None:
        raise DecorationError(f"too many proofs ({len(proofs)}) to decorate {y}")
    return out


def erase(code: FunctorCode, y: El) -> El:
    """Inverse of :func:`decorate`: keep only the first component at each position."""
    def first(x):
        if not isinstance(x, DPair):
            raise ShapeError(ID, x, "expected a dependent pair at an identity position")
        return x.fst
    return fmap_with(code, first, y)


def is_shaped(code: FunctorCode, y: El, xs: FinSet | None = None) -> bool:
    try:
        ps = positions(code, y)
    except ShapeError:
        return False
    if isinstance(y, SetV) and not y.is_canonical:
        return False
    return xs is None or all(p in xs for p in ps)


def enumerate_codes(max_depth: int, constants: Sequence[FinSet], polynomial: bool = False) -> Iterator[FunctorCode]:
    """All codes up to ``max_depth`` built from ``IdC`` and the given constants.

    Stable order: by depth, then by construction order.
    """
    levels: list[list[FunctorCode]] = [[ID] + [Const(s) for s in constants]]
    yield from levels[0]
    for d in range(1, max_depth + 1):
        below = [c for lvl in levels for c in lvl]
        prev = levels[-1]
        prev_set = set(prev)
        new: list[FunctorCode] = []
        for l in below:
            for r in below:
                if l in prev_set or r in prev_set:
                    new.append(SumC(l, r))
                    new.append(ProdC(l, r))
        if not polynomial:
            for a in prev:
                new.append(SeqC(a))
                new.append(PowC(a))
        levels.append(new)
        yield from new
