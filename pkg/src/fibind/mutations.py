"""Deliberately broken constructions.

Each one must make its targeted law report at least one counterexample;
otherwise the suite could not detect the bug it claims to detect.
"""
from __future__ import annotations

from .core import DPair, El, FinFn, FinSet, MuV
from .fibrations import FamiliesFibration, Family
from .functors import BoundConfig, DEFAULT_BOUND, FunctorCode
from .induction import psi_algebra


class BrokenSigmaFamilies(FamiliesFibration):
    """Families whose opreindexing drops the first tagged proof it produces."""

    name = "fam"

    def opreindex(self, f, p):
        good = super().opreindex(f, p)
        for y in good.carrier:
            proofs = good.fiber[y]
            if len(proofs):
                fiber = dict(good.fiber)
                fiber[y] = FinSet._sorted(proofs.elements[1:])
                return Family(good.carrier, fiber)
        return good

    def __repr__(self):
        return "<fibration fam with broken opreindex>"


def swapped_psi_algebra(fib, code: FunctorCode, j, b: BoundConfig = DEFAULT_BOUND) -> FinFn:
    """``psi_algebra`` with the components of every dependent pair swapped.

    The codomain is widened just enough to hold the swapped pairs, so the
    only defect is the swap itself.
    """
    good = psi_algebra(fib, code, j, b)
    table = {z: _swap(v) for z, v in good.table.items()}
    return FinFn(good.dom, FinSet(good.cod.elements + tuple(table.values())), table)


def _swap(v: El) -> El:
    return DPair(v.snd, v.fst) if isinstance(v, DPair) else v


def in_term_without_dedup(code: FunctorCode, layer: El) -> MuV:
    """``in_term`` that keeps set layers exactly as given (no sorting or deduplication)."""
    return MuV(layer)


MUTATIONS = {
    "broken-sigma": ("check_adjunctions", "sigma-reindex-adjunction"),
    "swapped-psi": ("check_phi_psi_adjunction", "phi-psi-adjunction"),
    "skipped-hs-dedup": ("check_induction_soundness", "induction-soundness"),
}
