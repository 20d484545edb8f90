import json

import pytest

from fibind.fibrations import FamiliesFibration, SubobjectFibration
from fibind.laws import (
    LawConfig, check_adjunctions, check_induction_soundness, check_lifting_algebra,
    check_phi_psi_adjunction, check_truth_preservation, codes, run_laws,
)
from fibind.mutations import BrokenSigmaFamilies, in_term_without_dedup, swapped_psi_algebra

SMALL = LawConfig(max_base_size=2, max_fiber_size=2, max_code_depth=1, seq_len_bound=2,
                  rose_samples=50, nat_max=6, hs_rank=2)
FIBS = [FamiliesFibration(), SubobjectFibration()]


@pytest.mark.parametrize("fib", FIBS, ids=lambda f: f.name)
@pytest.mark.parametrize("check", [check_adjunctions, check_truth_preservation,
                                   check_phi_psi_adjunction, check_lifting_algebra])
def test_small_sweep_passes(check, fib):
    report = check(SMALL, fib)
    assert report.ok, report.to_text()
    assert all(r.instances > 0 or r.skipped > 0 for r in report.results), report.to_text()


def test_small_induction_passes():
    report = check_induction_soundness(SMALL)
    assert report.ok, report.to_text()


def test_relabelling_reduction_agrees_with_full_sweep():
    for up_to in (True, False):
        cfg = LawConfig(max_base_size=2, max_fiber_size=2, max_code_depth=1, seq_len_bound=1,
                        rose_samples=5, up_to_relabelling=up_to)
        for fib in FIBS:
            for check in (check_adjunctions, check_truth_preservation, check_phi_psi_adjunction):
                assert check(cfg, fib).ok
    reduced = check_adjunctions(LawConfig(max_code_depth=0), FIBS[0])
    full = check_adjunctions(LawConfig(max_code_depth=0, up_to_relabelling=False), FIBS[0])
    for r, f in zip(reduced.results, full.results):
        assert r.name == f.name and r.instances <= f.instances


def test_empty_base_is_vacuous_but_counted():
    cfg = LawConfig(max_base_size=0, max_code_depth=0, rose_samples=1)
    report = run_laws(cfg, ["fam", "sub"])
    assert report.ok
    assert {r.fibration for r in report.results} == {"fam", "sub", "-"}
    assert report.get("sigma-reindex-adjunction", "fam").instances >= 1


@pytest.mark.parametrize("field", ["max_base_size", "max_fiber_size", "seq_len_bound", "rose_samples"])
def test_config_rejects_negative(field):
    with pytest.raises(ValueError):
        LawConfig(**{field: -1})


def test_config_rejects_unknown_fibration():
    with pytest.raises(ValueError):
        LawConfig(fibration="grothendieck")


def test_code_enumeration_sizes():
    assert len(codes(LawConfig())) == 1515
    assert len(codes(LawConfig(), polynomial=True)) == 885
    assert len(codes(LawConfig(max_code_depth=0))) == 3


def test_report_rendering():
    report = check_truth_preservation(LawConfig(max_base_size=1, max_code_depth=0), FIBS[1])
    text = report.to_text()
    assert text.startswith("PASS  sub  truth-preservation")
    assert text.endswith("0 failures\n")
    data = json.loads(report.to_json())
    assert data["ok"] is True
    assert set(data["laws"][0]) == {"name", "fibration", "instances", "failures", "failure_count", "skipped"}


# Each mutation must be caught by the check it targets.

MUT = LawConfig(max_base_size=2, max_code_depth=1, seq_len_bound=1, rose_samples=20, nat_max=3, hs_rank=2)


def test_broken_sigma_is_caught():
    r = check_adjunctions(MUT, BrokenSigmaFamilies()).get("sigma-reindex-adjunction")
    assert r.failure_count >= 1 and r.failures
    assert "counterexample" in check_adjunctions(MUT, BrokenSigmaFamilies()).to_text()


def test_swapped_psi_is_caught():
    report = check_phi_psi_adjunction(MUT, FamiliesFibration(), psi_algebra=swapped_psi_algebra)
    assert report.get("phi-psi-adjunction").failure_count >= 1


def test_swapped_psi_is_inert_on_subobjects():
    # subobject comprehensions hold bare elements, so there is no pair to swap
    assert check_phi_psi_adjunction(MUT, SubobjectFibration(), psi_algebra=swapped_psi_algebra).ok


def test_skipped_dedup_is_caught():
    report = check_induction_soundness(MUT, in_term=in_term_without_dedup)
    assert report.get("induction-soundness").failure_count >= 1
    # the other subjects have no set layers, so only HS terms fail
    assert all("HS" in d for d in report.get("induction-soundness").failures)


def test_unmutated_checks_pass_on_mutation_config():
    assert check_adjunctions(MUT, FamiliesFibration()).ok
    assert check_induction_soundness(MUT).ok
