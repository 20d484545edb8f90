"""Datatype declarations: parsing, printing, compilation and rule derivation.

Grammar::

    source := { setdecl | decl }
    setdecl := "set" NAME "=" "{" [ ident { "," ident } ] "}"
    decl    := "data" NAME "=" ctor { "|" ctor }
    ctor    := NAME { atype }
    atype   := NAME | "(" type ")"
    type    := "List" atype | "Pf" atype | atype { "," atype }

``--`` starts a comment that runs to the end of the line. A source holds
exactly one ``data`` declaration; type parameters, several declarations and
function arrows are rejected as out of scope.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import UNIT, Atom, El, FinSet, Inl, Inr, MuV, Pair, SeqV, SetV, render
from .errors import DeclError, OutOfScopeError, ShapeError
from .functors import UNIT_SET, Const, FunctorCode, IdC, PowC, ProdC, SeqC, SumC, show_code

KEYWORDS = frozenset({"data", "set", "List", "Pf"})


@dataclass(frozen=True)
class Rec:
    pass


@dataclass(frozen=True)
class Named:
    name: str
    elements: FinSet


@dataclass(frozen=True)
class ListOf:
    arg: "ArgType"


@dataclass(frozen=True)
class PfOf:
    arg: "ArgType"


@dataclass(frozen=True)
class TupleOf:
    args: tuple["ArgType", ...]


ArgType = Union[Rec, Named, ListOf, PfOf, TupleOf]


@dataclass(frozen=True)
class Decl:
    name: str
    constructors: tuple[tuple[str, tuple[ArgType, ...]], ...]

    def __post_init__(self):
        seen = set()
        for ctor, _ in self.constructors:
            if ctor in seen:
                raise DeclError(f"duplicate constructor {ctor!r}")
            seen.add(ctor)
        if not self.constructors:
            raise DeclError("a datatype needs at least one constructor")

    def named_sets(self) -> dict[str, FinSet]:
        out: dict[str, FinSet] = {}
        for _, args in self.constructors:
            for a in args:
                _collect_named(a, out)
        return out


def _collect_named(a, out):
    match a:
        case Named(n, els):
            out.setdefault(n, els)
        case ListOf(x) | PfOf(x):
            _collect_named(x, out)
        case TupleOf(xs):
            for x in xs:
                _collect_named(x, out)


# ---------------------------------------------------------------------------
# lexing

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[=|(){},])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(source: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise DeclError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "arrow":
            raise OutOfScopeError("function-space arguments are out of scope (hyperfunction-style types)", line, col)
        elif kind in ("name", "punct"):
            toks.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, source: str):
        self.toks = _lex(source)
        self.i = 0
        self.sets: dict[str, FinSet] = {}
        self.dtype: str | None = None

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise DeclError(msg, tok.line, tok.col)

    def advance(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text) -> _Tok:
        if self.tok.text != text or self.tok.kind == "eof":
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def name(self, what) -> _Tok:
        if self.tok.kind != "name" or self.tok.text in KEYWORDS:
            self.fail(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def source(self) -> Decl:
        # mutual definitions would otherwise surface as an unknown name
        datas = [t for t in self.toks if t.kind == "name" and t.text == "data"]
        if len(datas) > 1:
            raise OutOfScopeError("several datatype declarations (mutual definitions) are out of scope",
                                  datas[1].line, datas[1].col)
        decl = None
        while self.tok.kind != "eof":
            if self.tok.text == "set":
                self.set_decl()
            elif self.tok.text == "data":
                if decl is not None:
                    raise OutOfScopeError("several datatype declarations (mutual definitions) are out of scope",
                                          self.tok.line, self.tok.col)
                decl = self.data_decl()
            else:
                self.fail(f"expected 'data' or 'set', found {self.tok.text!r}")
        if decl is None:
            self.fail("no datatype declaration found")
        return decl

    def set_decl(self):
        self.expect("set")
        n = self.name("a set name")
        if n.text in self.sets:
            self.fail(f"set {n.text!r} declared twice", n)
        self.expect("=")
        self.expect("{")
        elems = []
        if self.tok.text != "}":
            elems.append(self.element(elems))
            while self.tok.text == ",":
                self.advance()
                elems.append(self.element(elems))
        self.expect("}")
        self.sets[n.text] = FinSet(elems)

    def element(self, so_far) -> Atom:
        t = self.name("a set element")
        if Atom(t.text) in so_far:
            self.fail(f"duplicate set element {t.text!r}", t)
        return Atom(t.text)

    def data_decl(self) -> Decl:
        self.expect("data")
        n = self.name("a datatype name")
        if n.text in self.sets:
            self.fail(f"{n.text!r} is already a set name", n)
        if self.tok.kind == "name" and self.tok.text not in KEYWORDS:
            raise OutOfScopeError(f"type parameters ({self.tok.text!r}) make a nested datatype; "
                                  "nested datatypes are out of scope", self.tok.line, self.tok.col)
        self.dtype = n.text
        self.expect("=")
        ctors = [self.ctor()]
        while self.tok.text == "|":
            self.advance()
            ctors.append(self.ctor())
        seen = {}
        for tok, args in ctors:
            if tok.text in seen:
                self.fail(f"duplicate constructor {tok.text!r}", tok)
            seen[tok.text] = args
        return Decl(n.text, tuple((t.text, args) for t, args in ctors))

    def ctor(self):
        t = self.name("a constructor name")
        args = []
        while self.starts_atype():
            args.append(self.atype())
        return t, tuple(args)

    def starts_atype(self) -> bool:
        t = self.tok
        return t.text == "(" or (t.kind == "name" and t.text not in ("data", "set"))

    def atype(self) -> ArgType:
        t = self.tok
        if t.text == "(":
            self.advance()
            ty = self.type_()
            self.expect(")")
            return ty
        if t.text in ("List", "Pf"):
            self.fail(f"{t.text!r} needs an argument; write ({t.text} T)")
        return self.ref()

    def ref(self) -> ArgType:
        t = self.name("a type name")
        if t.text == self.dtype:
            return Rec()
        if t.text in self.sets:
            return Named(t.text, self.sets[t.text])
        self.fail(f"unknown set name {t.text!r}", t)

    def type_(self) -> ArgType:
        t = self.tok
        if t.text in ("List", "Pf"):
            self.advance()
            arg = self.atype()
            return ListOf(arg) if t.text == "List" else PfOf(arg)
        parts = [self.atype()]
        if self.starts_atype():
            raise OutOfScopeError("type application makes a nested datatype; nested datatypes are out of scope",
                                  self.tok.line, self.tok.col)
        while self.tok.text == ",":
            self.advance()
            parts.append(self.atype())
        return parts[0] if len(parts) == 1 else TupleOf(tuple(parts))


def parse_decl(source: str) -> Decl:
    return _Parser(source).source()


# ---------------------------------------------------------------------------
# printing


def _show_arg(a: ArgType, dtype: str, atomic: bool) -> str:
    match a:
        case Rec():
            return dtype
        case Named(n, _):
            return n
        case ListOf(x):
            s = f"List {_show_arg(x, dtype, True)}"
        case PfOf(x):
            s = f"Pf {_show_arg(x, dtype, True)}"
        case TupleOf(xs):
            return "(" + ", ".join(_show_arg(x, dtype, True) for x in xs) + ")"
        case _:
            raise TypeError(a)
    return f"({s})" if atomic else s


def print_decl(d: Decl) -> str:
    lines = [
        "set " + n + " = {" + ", ".join(render(e) for e in els) + "}"
        for n, els in d.named_sets().items()
    ]
    ctors = [" ".join([c] + [_show_arg(a, d.name, True) for a in args]) for c, args in d.constructors]
    lines.append(f"data {d.name} = " + " | ".join(ctors))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# compilation


def _right_nested(parts, node, empty):
    if not parts:
        return empty
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = node(p, out)
    return out


def compile_arg(a: ArgType) -> FunctorCode:
    match a:
        case Rec():
            return IdC()
        case Named(_, els):
            return Const(els)
        case ListOf(x):
            return SeqC(compile_arg(x))
        case PfOf(x):
            return PowC(compile_arg(x))
        case TupleOf(xs):
            return _right_nested([compile_arg(x) for x in xs], ProdC, Const(UNIT_SET))
    raise TypeError(a)


def compile_functor(d: Decl) -> FunctorCode:
    summands = [
        _right_nested([compile_arg(a) for a in args], ProdC, Const(UNIT_SET))
        for _, args in d.constructors
    ]
    return _right_nested(summands, SumC, None)


# ---------------------------------------------------------------------------
# terms in constructor notation


def _split(v: El, n: int) -> list[El]:
    """Undo right-nested pairing of ``n`` components."""
    if n == 0:
        return []
    out = []
    for _ in range(n - 1):
        if not isinstance(v, Pair):
            raise ShapeError(None, v, "expected a pair")
        out.append(v.fst)
        v = v.snd
    out.append(v)
    return out


def constructor_of(d: Decl, layer: El) -> tuple[int, list[El]]:
    """Constructor index and argument values of a layer of ``compile_functor(d)``."""
    n = len(d.constructors)
    v, i = layer, 0
    while i < n - 1:
        if isinstance(v, Inl):
            v = v.value
            break
        if not isinstance(v, Inr):
            raise ShapeError(compile_functor(d), layer, "expected inl or inr")
        v, i = v.value, i + 1
    args = d.constructors[i][1]
    return i, (_split(v, len(args)) if args else [])


def make_layer(d: Decl, index: int, args: list[El]) -> El:
    arity = len(d.constructors[index][1])
    if len(args) != arity:
        raise DeclError(f"{d.constructors[index][0]} takes {arity} arguments, got {len(args)}")
    payload = _right_nested(list(args), Pair, UNIT)
    if index < len(d.constructors) - 1:
        payload = Inl(payload)
    for _ in range(index):
        payload = Inr(payload)
    return payload


def show_term(d: Decl, t: El) -> str:
    """``Succ (Succ Zero)``, ``Node [Node []]``, ``MkHS {MkHS {}}``."""
    return _show_term(d, t, False)


def _show_term(d, t, atomic):
    if not isinstance(t, MuV):
        raise ShapeError(compile_functor(d), t, "not a term")
    i, vals = constructor_of(d, t.layer)
    name, args = d.constructors[i]
    if not args:
        return name
    s = " ".join([name] + [_show_value(d, a, v) for a, v in zip(args, vals)])
    return f"({s})" if atomic else s


def _show_value(d, a, v):
    match a:
        case Rec():
            return _show_term(d, v, True)
        case Named():
            return render(v)
        case ListOf(x):
            if not isinstance(v, SeqV):
                raise ShapeError(None, v, "expected a sequence")
            return "[" + ", ".join(_show_inner(d, x, u) for u in v.items) + "]"
        case PfOf(x):
            if not isinstance(v, SetV):
                raise ShapeError(None, v, "expected a set")
            return "{" + ", ".join(_show_inner(d, x, u) for u in v.items) + "}"
        case TupleOf(xs):
            return "(" + ", ".join(_show_inner(d, x, u) for x, u in zip(xs, _split(v, len(xs)))) + ")"
    raise TypeError(a)


def _show_inner(d, a, v):
    # inside brackets no parentheses are needed around applications
    return _show_term(d, v, False) if isinstance(a, Rec) else _show_value(d, a, v)


# ---------------------------------------------------------------------------
# induction rules


def _base(a: ArgType, dtype: str) -> str:
    match a:
        case Rec():
            return dtype[0].lower()
        case Named(n, _):
            return n[0].lower()
        case ListOf(x):
            return _base(x, dtype) + "s"
        case PfOf(_):
            return "s"
        case TupleOf():
            return "p"
    raise TypeError(a)


def _app(fn: str, arg: str) -> str:
    return f"{fn} ({arg})" if " " in arg else f"{fn} {arg}"


def _hyp(a: ArgType, expr: str, depth: int) -> str | None:
    """Hypothesis demanding ``P`` at every recursive position reachable from ``expr``."""
    k = "k" + ("'" * depth)
    match a:
        case Rec():
            return _app("P", expr)
        case Named():
            return None
        case ListOf(x):
            inner = _hyp(x, f"{expr} !! {k}", depth + 1)
            return None if inner is None else f"∀ {k} < {_app('length', expr)}. {inner}"
        case PfOf(x):
            x_var = "x" + ("'" * depth)
            inner = _hyp(x, x_var, depth + 1)
            return None if inner is None else f"∀ {x_var} ∈ {expr if ' ' not in expr else '(' + expr + ')'}. {inner}"
        case TupleOf(xs):
            parts = [_hyp(x, f"π{i} {expr}", depth) for i, x in enumerate(xs, 1)]
            parts = [p for p in parts if p is not None]
            return " × ".join(parts) if parts else None
    raise TypeError(a)


@dataclass(frozen=True)
class Premise:
    constructor: str
    hypotheses: tuple[str, ...]
    text: str


@dataclass(frozen=True)
class Rule:
    datatype: str
    functor: str
    premises: tuple[Premise, ...]
    conclusion: str
    rule: str


def _binders(args, dtype):
    """Variable name, pattern text and type text for each argument."""
    bases = [_base(a, dtype) for a in args]
    counts: dict[str, int] = {}
    for b in bases:
        counts[b] = counts.get(b, 0) + 1
    seen: dict[str, int] = {}
    out = []
    for a, b in zip(args, bases):
        if counts[b] > 1:
            seen[b] = seen.get(b, 0) + 1
            name = f"{b}{seen[b]}"
        else:
            name = b
        out.append((a, name))
    return out


def _premise(d: Decl, ctor: str, args) -> Premise:
    if not args:
        return Premise(ctor, (), f"P {ctor}")
    binders, hyps, pats = [], [], []
    for a, v in _binders(args, d.name):
        ty = _show_arg(a, d.name, False)
        if isinstance(a, PfOf):
            pat = "{" + f"{v}1, …, {v}n" + "}"
            first, last = _hyp(a.arg, f"{v}1", 1), _hyp(a.arg, f"{v}n", 1)
            if first is not None:
                hyps.append(f"{first} × … × {last}")
        elif isinstance(a, TupleOf):
            comps = [(x, f"{v}{i}") for i, x in enumerate(a.args, 1)]
            pat = "(" + ", ".join(c for _, c in comps) + ")"
            hyps.extend(h for h in (_hyp(x, c, 0) for x, c in comps) if h is not None)
        else:
            pat = v
            h = _hyp(a, v, 0)
            if h is not None:
                hyps.append(h)
        binders.append((pat, ty))
        pats.append(pat)
    if len(binders) == 1:
        quant = f"∀ {binders[0][0]} : {binders[0][1]}."
    else:
        quant = "∀ " + " ".join(f"({p} : {t})" for p, t in binders) + "."
    goal = f"P ({ctor} {' '.join(pats)})"
    body = " → ".join([_paren_forall(h) for h in hyps] + [goal])
    return Premise(ctor, tuple(hyps), f"{quant} {body}")


def _paren_forall(s: str) -> str:
    return f"({s})" if s.startswith("∀") else s


def derive_rule(d: Decl) -> Rule:
    premises = tuple(_premise(d, c, args) for c, args in d.constructors)
    conclusion = f"∀ (t : {d.name}). P t"
    rule = (f"ind{d.name} : ∀ (P : {d.name} → Set). "
            + " → ".join(_paren_forall(p.text) for p in premises)
            + f" → {conclusion}")
    return Rule(d.name, show_code(compile_functor(d)), premises, conclusion, rule)


def derive_rule_text(d: Decl) -> str:
    r = derive_rule(d)
    width = max(len(p.constructor) for p in r.premises)
    lines = [print_decl(d).rstrip("\n"), f"functor: {r.functor}", "premises:"]
    lines += [f"  {p.constructor.ljust(width)} : {p.text}" for p in r.premises]
    lines += [f"conclusion: {r.conclusion}", "rule:", f"  {r.rule}"]
    return "\n".join(lines) + "\n"


def derive_rule_json(d: Decl) -> dict:
    r = derive_rule(d)
    return {
        "datatype": r.datatype,
        "premises": [
            {"constructor": p.constructor, "hypotheses": list(p.hypotheses), "premise": p.text}
            for p in r.premises
        ],
        "conclusion": r.conclusion,
    }
