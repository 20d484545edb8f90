import pytest

from fibind.core import Atom, Pair, parse_el
from fibind.errors import ShapeError
from fibind.induction import genind, ind_direct
from fibind.registry import DEMOS, NAT_CODE, ROSE_CODE, hs, nat, rebuild, rose, step_for


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_demos_agree_with_direct_recursion(name):
    demo = DEMOS[name]
    t = demo.term()
    step = demo.step_algebra()
    assert genind(demo.code, step, t) == ind_direct(demo.code, step, t)


def test_demo_proofs():
    assert genind(NAT_CODE, DEMOS["nat-succ-chain"].step_algebra(), nat(3)).proof == \
        Pair(Atom("s"), Pair(Atom("s"), Pair(Atom("s"), Atom("z"))))
    assert DEMOS["rose-size"].term() == rose(rose(), rose(rose(), rose()))
    assert genind(ROSE_CODE, DEMOS["rose-size"].step_algebra(), DEMOS["rose-size"].term()).proof == Atom("5")
    hs_demo = DEMOS["hs-rank"]
    assert genind(hs_demo.code, hs_demo.step_algebra(), hs(hs(hs()))).proof == Atom("2")


def test_rebuild_canonicalizes_and_validates():
    demo = DEMOS["hs-rank"]
    assert demo.term("mu({mu({}), mu({})})") == hs(hs())
    with pytest.raises(ShapeError):
        rebuild(demo.code, parse_el("inl(())"))
    with pytest.raises(ShapeError):
        rebuild(NAT_CODE, parse_el("mu(inr(a))"))


def test_step_lookup():
    assert step_for("truth", ROSE_CODE).code == ROSE_CODE
    with pytest.raises(KeyError):
        step_for("rose-size", NAT_CODE)
