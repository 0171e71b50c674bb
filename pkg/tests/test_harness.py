import pytest

from latmod import (
    gen_zn_self_module,
    gen_zn_square_module,
    inject_classifier_fault,
    l_element_flags,
    residual_mm,
)
from latmod.classify import classify_all, is_pseudo_classical_primary
from latmod.harness import (
    AUTO_HYPOTHESES,
    BUNDLE,
    check_implication_figure,
    default_instances,
    list_checks,
    make_instance,
    registry,
    replay_violation,
    run_check,
    run_suite,
)

from conftest import label_index


@pytest.fixture(scope="module")
def inst12():
    return make_instance("zn-self-12", gen_zn_self_module(12))


@pytest.fixture(scope="module")
def inst8sq():
    return make_instance("zn-square-8", gen_zn_square_module(8))


def test_registry_shape():
    checks = list_checks()
    assert len(checks) >= 30
    ids = [c["id"] for c in checks]
    assert len(ids) == len(set(ids))
    by_id = registry()
    assert by_id["fig1-maximal-implies-prime"].dashed
    assert by_id["fig1-prime-implies-primary"].dashed
    assert by_id["fig1-classical-prime-implies-two-absorbing"].dashed
    assert not by_id["fig1-prime-implies-semiprime"].dashed
    for check in by_id.values():
        assert check.description
        for h in check.hypotheses:
            assert h in {"pg-lattice", "pg-module", "faithful",
                         "multiplication-module", "top-compact", "compactly-generated"}


def test_suite_green_on_two_instances(inst12, inst8sq):
    report = run_suite([inst12, inst8sq])
    assert report.ok()
    assert report.counts()["fail"] == 0
    statuses = {(r.instance, r.check_id): r for r in report.results}
    # a bundle-gated check is asserted on the multiplication module...
    assert statuses[("zn-self-12", "equiv-pseudo-primary-4way")].status == "pass"
    # ...and skipped, naming the failing hypothesis, where the bundle fails
    skipped = statuses[("zn-square-8", "equiv-pseudo-primary-4way")]
    assert skipped.status == "skipped"
    assert "multiplication-module" in skipped.skip_reason


def test_skip_pathways_distinguished(inst12):
    report = run_suite([inst12])
    reasons = {r.skip_reason for r in report.results if r.status == "skipped"}
    assert any(r and r.startswith("hypotheses unmet") for r in reasons) is False  # bundle holds
    assert "vacuous quantification" in reasons  # no chains of classical primes here
    sq = run_suite([make_instance("zn-square-8", gen_zn_square_module(8))])
    sq_reasons = {r.skip_reason for r in sq.results if r.status == "skipped"}
    assert any(r and r.startswith("hypotheses unmet") for r in sq_reasons)


def test_hypothesis_gating_covers_all_bundle_checks(inst8sq):
    report = run_suite([inst8sq])
    for result in report.results:
        check = registry()[result.check_id]
        if "multiplication-module" in check.hypotheses:
            assert result.status == "skipped"
            assert "multiplication-module" in result.skip_reason


def test_implication_figure(inst12, inst8sq):
    for inst in (inst12, inst8sq):
        report = check_implication_figure(inst)
        assert len(report.results) == 1
        assert report.results[0].status == "pass"
        assert report.results[0].violations == []
    # a single-proper-element module still evaluates (and passes)
    single = make_instance("zn-self-2", gen_zn_self_module(2))
    assert check_implication_figure(single).results[0].status == "pass"
    # a module with no proper elements is a vacuous skip
    trivial = make_instance("zn-self-1", gen_zn_self_module(1))
    result = check_implication_figure(trivial).results[0]
    assert result.status == "skipped" and result.skip_reason == "vacuous quantification"


def test_unknown_check_rejected(inst12):
    with pytest.raises(KeyError):
        run_suite([inst12], checks=["no-such-check"])


def test_report_deterministic(inst12, inst8sq):
    a = run_suite([inst12, inst8sq], seed=7).as_dict()
    b = run_suite([inst12, inst8sq], seed=7).as_dict()
    assert a == b
    c = run_suite([inst12, inst8sq], seed=8)
    assert c.ok()  # a different seed still passes; sampling only widens coverage


def test_instance_info_recorded(inst8sq):
    report = run_suite([inst8sq], checks=["fig1-implications"])
    info = report.instances["zn-square-8"]
    assert info["module_elements"] == 37 and info["lattice_elements"] == 4
    assert len(info["fingerprint"]) == 16
    assert info["hypotheses"]["multiplication-module"] is False
    assert info["hypotheses"]["top-compact (auto)"] is True


def test_fault_injection_fails_and_replays(inst12, inst8sq):
    clean = run_suite([inst12, inst8sq])
    assert clean.ok()
    with inject_classifier_fault("pseudo_primary"):
        faulted = run_suite([inst12, inst8sq])
        assert not faulted.ok()
        failing = faulted.failures()
        assert any(r.check_id == "fig1-implications" for r in failing)
        instances = {i.name: i for i in (inst12, inst8sq)}
        for result in failing:
            for violation in result.violations[:3]:
                assert replay_violation(instances[result.instance],
                                        result.check_id, violation)
    healed = run_suite([inst12, inst8sq])
    assert healed.ok()


def test_fault_scoped_to_selected_elements(inst12):
    idx = label_index(inst12.module)
    with inject_classifier_fault("prime", elements=[idx["(2)"]]):
        cls = classify_all(inst12.module)
        assert not cls[idx["(2)"]].prime
        assert cls[idx["(3)"]].prime
    cls = classify_all(inst12.module)
    assert cls[idx["(2)"]].prime


def test_replay_rejects_fabricated_witness(inst12):
    fake = {"kind": "flag-implication", "element": 1, "label": "(2)",
            "antecedent": "prime", "consequent": "pseudo_primary", "dashed": False}
    assert not replay_violation(inst12, "fig1-implications", fake)


def test_full_default_family_green():
    report = run_suite(default_instances())
    assert report.ok()
    failures = report.failures()
    assert failures == []


def test_pcp_sufficient_condition_needs_unrestricted_residuals(inst12):
    # On the Z_12 self module the element (6) has (N:K) primary for every
    # PROPER K not below N, yet it is not pseudo-classical primary: the
    # hypothesis must also cover K = I_M, where (N:I_M) = (6) is not primary.
    M = inst12.module
    idx = label_index(M)
    n = idx["(6)"]
    L = M.lattice
    for k in M.proper_elements():
        if not M.le(k, n):
            assert l_element_flags(L, residual_mm(M, n, k)).primary
    assert not l_element_flags(L, residual_mm(M, n, M.top)).primary
    assert not is_pseudo_classical_primary(M, n)[0]
    # the registered check therefore quantifies K over the whole carrier
    result = run_check(inst12, registry()["thm-residual-primary-implies-pcp"])
    assert result.status == "pass"


def test_chain_checks_sample_longer_chains():
    # zn-self-16 is a chain of primary ideals: plenty of pseudo-primary chains
    inst = make_instance("zn-self-16", gen_zn_self_module(16))
    result = run_check(inst, registry()["chain-pseudo-primary"], chain_samples=50)
    assert result.status == "pass"
    assert result.evaluated > 0


def test_bundle_constant():
    assert set(BUNDLE) == {"pg-lattice", "faithful", "multiplication-module",
                           "pg-module", "top-compact"}
    assert AUTO_HYPOTHESES == {"top-compact", "compactly-generated"}
