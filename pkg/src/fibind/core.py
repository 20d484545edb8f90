"""Universal element values, explicit finite sets and explicit finite functions.

Every carrier in the package is a :class:`FinSet` of :class:`El` values. An El
is an immutable tagged tree; its canonical total order is realised by a
cached sort key, so ordering, equality and hashing all reduce to comparisons
of plain tuples.

Tag precedence is ``Unit < Atom < Inl < Inr < Pair < SeqV < SetV < DPair <
MuV``, lexicographic within a tag.
"""
from __future__ import annotations

import enum
import itertools
import operator
import re
from typing import Callable, Iterable, Iterator, Mapping

from .errors import CompositionError, ElSyntaxError, FinFnError, NotInCodomainError

_UNIT, _ATOM, _INL, _INR, _PAIR, _SEQ, _SET, _DPAIR, _MU = range(9)


_set = object.__setattr__


class El:
    """Base class of element values.

    ``_key`` is the structural sort key; ``_hash`` is built from the children's
    hashes so construction costs O(arity), not O(size).
    """

    __slots__ = ("_key", "_hash")

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, El):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"El({render(self)})"

    def __reduce__(self):
        return (parse_el, (render(self),))


class Unit(El):
    __slots__ = ()
    __match_args__ = ()

    def __init__(self):
        _set(self, "_key", (_UNIT,))
        _set(self, "_hash", hash((_UNIT,)))


class Atom(El):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        _set(self, "name", name)
        _set(self, "_key", (_ATOM, name))
        _set(self, "_hash", hash((_ATOM, name)))


class Inl(El):
    __slots__ = ("value",)
    __match_args__ = ("value",)

    def __init__(self, value: El):
        _set(self, "value", value)
        _set(self, "_key", (_INL, value._key))
        _set(self, "_hash", hash((_INL, value._hash)))


class Inr(El):
    __slots__ = ("value",)
    __match_args__ = ("value",)

    def __init__(self, value: El):
        _set(self, "value", value)
        _set(self, "_key", (_INR, value._key))
        _set(self, "_hash", hash((_INR, value._hash)))


class Pair(El):
    __slots__ = ("fst", "snd")
    __match_args__ = ("fst", "snd")

    def __init__(self, fst: El, snd: El):
        _set(self, "fst", fst)
        _set(self, "snd", snd)
        _set(self, "_key", (_PAIR, fst._key, snd._key))
        _set(self, "_hash", hash((_PAIR, fst._hash, snd._hash)))


class SeqV(El):
    __slots__ = ("items",)
    __match_args__ = ("items",)

    def __init__(self, items: Iterable[El] = ()):
        items = tuple(items)
        _set(self, "items", items)
        _set(self, "_key", (_SEQ, tuple([i._key for i in items])))
        _set(self, "_hash", hash((_SEQ, tuple([i._hash for i in items]))))


class SetV(El):
    """A finite set value.

    The raw constructor keeps ``items`` exactly as given; use :func:`setv` to
    build the canonical (sorted, duplicate-free) form.
    """

    __slots__ = ("items",)
    __match_args__ = ("items",)

    def __init__(self, items: Iterable[El] = ()):
        items = tuple(items)
        _set(self, "items", items)
        _set(self, "_key", (_SET, tuple([i._key for i in items])))
        _set(self, "_hash", hash((_SET, tuple([i._hash for i in items]))))

    @property
    def is_canonical(self) -> bool:
        return all(a < b for a, b in zip(self.items, self.items[1:]))


class DPair(El):
    __slots__ = ("fst", "snd")
    __match_args__ = ("fst", "snd")

    def __init__(self, fst: El, snd: El):
        _set(self, "fst", fst)
        _set(self, "snd", snd)
        _set(self, "_key", (_DPAIR, fst._key, snd._key))
        _set(self, "_hash", hash((_DPAIR, fst._hash, snd._hash)))


class MuV(El):
    __slots__ = ("layer",)
    __match_args__ = ("layer",)

    def __init__(self, layer: El):
        _set(self, "layer", layer)
        _set(self, "_key", (_MU, layer._key))
        _set(self, "_hash", hash((_MU, layer._hash)))


UNIT = Unit()

_key_of = operator.attrgetter("_key")


def setv(items: Iterable[El]) -> SetV:
    return SetV(sorted(set(items), key=_key_of))


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def canonical_order(a: El, b: El) -> Ordering:
    ka, kb = a._key, b._key
    if ka == kb:
        return Ordering.EQ
    return Ordering.LT if ka < kb else Ordering.GT


# ---------------------------------------------------------------------------
# finite sets


class FinSet:
    __slots__ = ("elements", "_members", "_keys", "_hash")

    def __init__(self, elements: Iterable[El] = ()):
        self._fill(tuple(sorted(set(elements), key=_key_of)))

    @classmethod
    def _sorted(cls, elems: tuple) -> "FinSet":
        # caller guarantees elems is strictly increasing
        s = cls.__new__(cls)
        s._fill(elems)
        return s

    def _fill(self, elems: tuple):
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", frozenset(elems))
        # key tuples compare in C, unlike El.__eq__
        object.__setattr__(self, "_keys", tuple([e._key for e in elems]))
        object.__setattr__(self, "_hash", hash(elems))

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    def __contains__(self, x) -> bool:
        return x in self._members

    def __iter__(self) -> Iterator[El]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FinSet):
            return NotImplemented
        return self._hash == other._hash and self._keys == other._keys

    def __hash__(self):
        return self._hash

    def __le__(self, other: "FinSet") -> bool:
        return self._members <= other._members

    def __repr__(self):
        return "FinSet{" + ", ".join(render(e) for e in self.elements) + "}"

    def union(self, other: "FinSet") -> "FinSet":
        return FinSet(self._members | other._members)


def atoms(*names: str) -> FinSet:
    return FinSet(Atom(n) for n in names)


# ---------------------------------------------------------------------------
# finite functions


class FinFn:
    """A function between finite sets stored as an explicit table."""

    __slots__ = ("dom", "cod", "table", "_hash")

    def __init__(self, dom: FinSet, cod: FinSet, table: Mapping[El, El]):
        table = dict(table)
        if len(table) != len(dom) or any(x not in table for x in dom):
            missing = [x for x in dom if x not in table]
            extra = [x for x in table if x not in dom]
            raise FinFnError(f"table not total on domain (missing {missing[:3]}, extra {extra[:3]})")
        for x, y in table.items():
            if y not in cod:
                raise FinFnError(f"image {y} of {x} is outside the codomain")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def from_callable(cls, dom: FinSet, cod: FinSet, fn: Callable[[El], El]) -> "FinFn":
        return cls(dom, cod, {x: fn(x) for x in dom})

    def __setattr__(self, name, value):
        raise AttributeError("FinFn is immutable")

    def __call__(self, x: El) -> El:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, FinFn):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.table == other.table

    def __hash__(self):
        if self._hash is None:
            h = hash((self.dom, self.cod, tuple(self.table[x] for x in self.dom)))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{render(x)} -> {render(self.table[x])}" for x in self.dom)
        return f"FinFn({body})"

    def image(self) -> FinSet:
        return FinSet(self.table.values())

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.dom)

    def is_surjective(self) -> bool:
        return set(self.table.values()) == set(self.cod)

    def is_iso(self) -> bool:
        return len(self.dom) == len(self.cod) and self.is_injective() and self.is_surjective()

    def inverse(self) -> "FinFn":
        if not self.is_iso():
            raise FinFnError("function is not a bijection")
        return FinFn(self.cod, self.dom, {y: x for x, y in self.table.items()})


def identity_fn(xs: FinSet) -> FinFn:
    return FinFn(xs, xs, {x: x for x in xs})


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """``g . f``; requires ``cod(f) == dom(g)``."""
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose: codomain {f.cod} differs from domain {g.dom}")
    gt = g.table
    return FinFn(f.dom, g.cod, {x: gt[y] for x, y in f.table.items()})


def preimage_fn(f: FinFn, y: El) -> FinSet:
    if y not in f.cod:
        raise NotInCodomainError(f"{y} is not in the codomain {f.cod}")
    return FinSet._sorted(tuple(x for x in f.dom if f.table[x] == y))


def all_functions(dom: FinSet, cod: FinSet) -> Iterator[FinFn]:
    """Every function ``dom -> cod`` in a stable lexicographic order."""
    xs = dom.elements
    for images in itertools.product(cod.elements, repeat=len(xs)):
        yield FinFn(dom, cod, dict(zip(xs, images)))


def functions_up_to_relabelling(dom: FinSet, cod: FinSet) -> Iterator[FinFn]:
    """One function ``dom -> cod`` per orbit under permutations of ``dom``.

    These are the functions whose images never decrease along ``dom``.
    """
    xs = dom.elements
    for images in itertools.combinations_with_replacement(cod.elements, len(xs)):
        yield FinFn(dom, cod, dict(zip(xs, images)))


# ---------------------------------------------------------------------------
# canonical text rendering

_BARE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")
_KEYWORDS = {"inl", "inr", "mu"}


def _render_atom(name: str) -> str:
    if _BARE.match(name) and name not in _KEYWORDS:
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(x: El) -> str:
    """Stable textual form; :func:`parse_el` inverts it."""
    out: list[str] = []
    _render_into(x, out)
    return "".join(out)


def _render_seq(items, out, open_, close):
    out.append(open_)
    for i, item in enumerate(items):
        if i:
            out.append(", ")
        _render_into(item, out)
    out.append(close)


def _render_into(x: El, out: list) -> None:
    match x:
        case Unit():
            out.append("()")
        case Atom(name):
            out.append(_render_atom(name))
        case Inl(v):
            out.append("inl(")
            _render_into(v, out)
            out.append(")")
        case Inr(v):
            out.append("inr(")
            _render_into(v, out)
            out.append(")")
        case Pair(a, b):
            out.append("(")
            _render_into(a, out)
            out.append(", ")
            _render_into(b, out)
            out.append(")")
        case SeqV(items):
            _render_seq(items, out, "[", "]")
        case SetV(items):
            _render_seq(items, out, "{", "}")
        case DPair(a, b):
            out.append("<")
            _render_into(a, out)
            out.append(" | ")
            _render_into(b, out)
            out.append(">")
        case MuV(layer):
            out.append("mu(")
            _render_into(layer, out)
            out.append(")")
        case _:
            raise TypeError(f"not an El: {x!r}")


_TOKEN = re.compile(r'\s*(?:(?P<punct>[()\[\]{}<>|,])|(?P<word>[A-Za-z0-9_][A-Za-z0-9_\']*)|(?P<str>"(?:[^"\\]|\\.)*"))')


class _ElParser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ElSyntaxError(text, pos, "unexpected character")
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if tok[0] == "eof" or (value is not None and tok[1] != value):
            raise ElSyntaxError(self.text, tok[2], f"expected {value or 'a value'}, found {tok[1] or 'end of input'}")
        self.i += 1
        return tok

    def items(self, close):
        out = []
        if self.peek()[1] == close:
            self.take(close)
            return out
        while True:
            out.append(self.value())
            if self.peek()[1] == ",":
                self.take(",")
                continue
            self.take(close)
            return out

    def value(self) -> El:
        kind, val, pos = self.take()
        if kind == "str":
            body = val[1:-1]
            return Atom(re.sub(r"\\(.)", r"\1", body))
        if kind == "word":
            if val in _KEYWORDS:
                self.take("(")
                inner = self.value()
                self.take(")")
                return {"inl": Inl, "inr": Inr, "mu": MuV}[val](inner)
            return Atom(val)
        if val == "(":
            if self.peek()[1] == ")":
                self.take(")")
                return UNIT
            a = self.value()
            self.take(",")
            b = self.value()
            self.take(")")
            return Pair(a, b)
        if val == "[":
            return SeqV(self.items("]"))
        if val == "{":
            return setv(self.items("}"))
        if val == "<":
            a = self.value()
            self.take("|")
            b = self.value()
            self.take(">")
            return DPair(a, b)
        raise ElSyntaxError(self.text, pos, f"unexpected {val!r}")


def parse_el(text: str) -> El:
    """Parse the rendering produced by :func:`render`. Set literals are canonicalised."""
    p = _ElParser(text)
    v = p.value()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ElSyntaxError(text, pos, f"trailing input {val!r}")
    return v
