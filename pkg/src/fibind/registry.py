"""Built-in datatypes and the named induction steps used by demos and the law suite."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import UNIT, Atom, El, Inl, Inr, MuV, Pair, SeqV, SetV, parse_el
from .errors import ShapeError
from .dsl import Decl, compile_functor, parse_decl
from .functors import FunctorCode, positions
from .induction import StepAlgebra, Term, in_term

NAT_SOURCE = "data Nat = Zero | Succ Nat\n"
ROSE_SOURCE = "data Rose = Node (List Rose)\n"
HS_SOURCE = "data HS = MkHS (Pf HS)\n"

NAT: Decl = parse_decl(NAT_SOURCE)
ROSE: Decl = parse_decl(ROSE_SOURCE)
HS: Decl = parse_decl(HS_SOURCE)
DATATYPES: dict[str, Decl] = {"Nat": NAT, "Rose": ROSE, "HS": HS}

NAT_CODE = compile_functor(NAT)
ROSE_CODE = compile_functor(ROSE)
HS_CODE = compile_functor(HS)


def nat(n: int) -> Term:
    t = in_term(NAT_CODE, Inl(UNIT))
    for _ in range(n):
        t = in_term(NAT_CODE, Inr(t))
    return t


def rose(*children: Term) -> Term:
    return in_term(ROSE_CODE, SeqV(children))


def hs(*members: Term) -> Term:
    return in_term(HS_CODE, SetV(members))


def _proofs(code: FunctorCode, layer: El) -> list[El]:
    return [d.snd for d in positions(code, layer)]


def _count(p: El) -> int:
    return int(p.name)


def nat_succ_chain(layer: El) -> El:
    if isinstance(layer, Inl):
        return Atom("z")
    return Pair(Atom("s"), layer.value.snd)


def rose_size(layer: El) -> El:
    return Atom(str(1 + sum(_count(p) for p in _proofs(ROSE_CODE, layer))))


def hs_rank(layer: El) -> El:
    ranks = [_count(p) for p in _proofs(HS_CODE, layer)]
    return Atom(str(1 + max(ranks)) if ranks else "0")


def truth_step(layer: El) -> El:
    return UNIT


@dataclass(frozen=True)
class Demo:
    name: str
    datatype: Decl
    step: Callable[[El], El]
    default_term: str

    @property
    def code(self) -> FunctorCode:
        return compile_functor(self.datatype)

    def step_algebra(self) -> StepAlgebra:
        return StepAlgebra(self.code, self.step, self.name)

    def term(self, text: str | None = None) -> Term:
        """Parse a rendered term and rebuild it through ``in_term`` (canonical form)."""
        return rebuild(self.code, parse_el(text or self.default_term))


def rebuild(code: FunctorCode, v: El) -> Term:
    """Validate ``v`` as a term of ``code`` and return its canonical form."""
    if not isinstance(v, MuV):
        raise ShapeError(code, v, "not a term")
    return in_term(code, v.layer)


DEMOS: dict[str, Demo] = {
    "nat-succ-chain": Demo("nat-succ-chain", NAT, nat_succ_chain, str(nat(3))),
    "rose-size": Demo("rose-size", ROSE, rose_size, str(rose(rose(), rose(rose(), rose())))),
    "hs-rank": Demo("hs-rank", HS, hs_rank, str(hs(hs(), hs(hs())))),
    "truth": Demo("truth", NAT, truth_step, str(nat(2))),
}


def step_for(name: str, code: FunctorCode) -> StepAlgebra:
    """Named step algebra; ``truth`` works over any code."""
    if name == "truth":
        return StepAlgebra(code, truth_step, "truth")
    demo = DEMOS[name]
    if demo.code != code:
        raise KeyError(f"step {name!r} is for {demo.code}, not {code}")
    return demo.step_algebra()
