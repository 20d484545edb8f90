"""Generic fibrational induction over finite sets.

Functor codes act on finite sets, two fibrations (proof-relevant families and
subobjects) supply predicates, and the generic lifting of a functor to
predicates turns induction premises into an algebra whose fold proves a
predicate for every term.
"""
from .core import (
    UNIT, Atom, DPair, El, FinFn, FinSet, Inl, Inr, MuV, Pair, SeqV, SetV, Unit,
    all_functions, compose_fn, parse_el, render, setv,
)
from .dsl import Decl, compile_functor, derive_rule, derive_rule_json, derive_rule_text, parse_decl, print_decl
from .errors import DeclError, FibindError, OutOfScopeError, ShapeError, SoundnessError
from .fibrations import FAMILIES, SUBOBJECTS, Family, FibreIso, PredMorphism, Subobject, fibration
from .functors import (
    ID, BoundConfig, Const, FunctorCode, IdC, PowC, ProdC, SeqC, SumC, apply_object, decorate, erase,
    fmap_el, fmap_with, positions,
)
from .induction import StepAlgebra, genind, in_term, ind_direct, phi, psi, psi_algebra, terms_up_to
from .laws import LawConfig, LawReport, run_laws
from .lifting import generic_lift, hj_lift, lift_morphism, lift_pointwise, truth_iso

__all__ = [
    "UNIT", "Atom", "DPair", "El", "FinFn", "FinSet", "Inl", "Inr", "MuV", "Pair", "SeqV", "SetV", "Unit",
    "all_functions", "compose_fn", "parse_el", "render", "setv",
    "Decl", "compile_functor", "derive_rule", "derive_rule_json", "derive_rule_text", "parse_decl", "print_decl",
    "DeclError", "FibindError", "OutOfScopeError", "ShapeError", "SoundnessError",
    "FAMILIES", "SUBOBJECTS", "Family", "FibreIso", "PredMorphism", "Subobject", "fibration",
    "ID", "BoundConfig", "Const", "FunctorCode", "IdC", "PowC", "ProdC", "SeqC", "SumC", "apply_object",
    "decorate", "erase", "fmap_el", "fmap_with", "positions",
    "StepAlgebra", "genind", "in_term", "ind_direct", "phi", "psi", "psi_algebra", "terms_up_to",
    "LawConfig", "LawReport", "run_laws",
    "generic_lift", "hj_lift", "lift_morphism", "lift_pointwise", "truth_iso",
]
