import numpy as np
import pytest

from utsuper import charoracle, enums, ffgroup, models, suites
from utsuper.charoracle import TableCache


def statuses(report):
    return {check.id: check.status for check in report.checks}


def assert_clean(report):
    failed = [check.id for check in report.checks if check.status == "fail"]
    assert not failed
    assert not report.failed


# ---------------------------------------------------------------------------
# bookkeeping
# ---------------------------------------------------------------------------


def test_suite_run_records():
    run = suites.SuiteRun(enums.Suite.roots, {"n": 3})
    assert run.record("a", "anchor", True, value=np.int64(3), roots={"x": (1, 2)})
    assert not run.record("b", "anchor", False)
    run.skip("c", "anchor", "too big")
    report = run.finish()
    assert statuses(report) == {"a": "pass", "b": "fail", "c": "skipped"}
    assert report.checks[0].witness == {"value": 3, "roots": {"x": [1, 2]}}
    assert report.failed and report.skipped
    assert report.model_dump(by_alias=True)["schema"] == 1


def test_guarded_turns_caps_into_skips():
    run = suites.SuiteRun(enums.Suite.roots, {})
    with run.guarded("big", "anchor"):
        raise models.CapExceeded("enumeration", 100, 10)
    (check,) = run.finish().checks
    assert check.status == "skipped"
    assert "100" in check.witness["reason"]


def test_all_symbols_count():
    assert len(list(suites.all_symbols(3, 2))) == 5
    assert len(list(suites.all_symbols(3, 3))) == 11
    assert len(list(suites.all_symbols(4, 2))) == 15


def test_every_suite_is_registered():
    assert set(suites.SUITES) == set(enums.Suite)


def test_run_suite_rejects_bad_input():
    with pytest.raises(ValueError):
        suites.run_suite("lemma99", 3, 2)
    with pytest.raises(models.UnsupportedField):
        suites.run_suite("roots", 3, 6)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def test_roots_suite():
    report = suites.run_suite("roots", 5, 2)
    assert_clean(report)
    assert report.suite == "roots"
    assert report.config["n"] == 5
    assert "roots.tk.k3" in statuses(report)


def test_lemma433_suite():
    report = suites.run_suite(enums.Suite.lemma433, 5, 2)
    assert_clean(report)
    assert len(report.checks) == 3


@pytest.mark.parametrize("n, q", [(3, 3), (4, 2)])
def test_elementary_character_suites(n, q):
    assert_clean(suites.run_suite("lemma21", n, q))
    assert_clean(suites.run_suite("lemma22", n, q))


def test_hook_group_suite():
    report = suites.run_suite("lemma32", 4, 3)
    assert_clean(report)
    assert statuses(report) == {"lemma32.almost_faithful": "pass", "lemma32.linear": "pass"}


def test_tensor_suite_at_q2_skips_the_additive_case():
    report = suites.run_suite("lemma34", 3, 2, samples=40, seed=3)
    assert_clean(report)
    assert statuses(report)["lemma34.iv"] == "skipped"
    assert statuses(report)["lemma34.v"] == "pass"


def test_tensor_suite_adjudicates_nested_terms():
    report = suites.run_suite("lemma34", 4, 3, samples=40)
    assert_clean(report)
    nested = next(check for check in report.checks if check.id == "lemma34.iv.nested_multiplicity")
    assert nested.witness["predicted"] == 2
    assert all(term["agrees_with_engine"] for term in nested.witness["terms"])


def test_partition_suite(tmp_path):
    report = suites.run_suite("thm-partition", 4, 2, cache=TableCache(tmp_path))
    assert_clean(report)
    assert statuses(report)["partition.mackey"] == "pass"
    assert list(tmp_path.glob("table-n4-q2-*.json"))


def test_factorization_suite():
    for n, q in ((4, 2), (4, 3)):
        assert_clean(suites.run_suite("factorization", n, q))


def test_extremal_suite():
    report = suites.run_suite("extremal", 4, 2, limit=12)
    assert_clean(report)
    assert report.config["variant"] == "prose"
    assert statuses(report)["count.oracle.top"] == "pass"
    seed = next(check for check in report.checks if check.id == "count.seed")
    assert seed.status == "pass"
    assert seed.witness["value"] == 8


@pytest.mark.slow
def test_extremal_suite_at_full_limit():
    report = suites.run_suite("extremal", 5, 2, limit=40)
    assert_clean(report)
    assert statuses(report)["count.second.recursion"] == "pass"
    assert statuses(report)["count.third.seven"] == "pass"


@pytest.mark.slow
def test_algebra_laws_over_a_thousand_samples():
    report = suites.run_suite("lemma34", 3, 2, samples=1000, seed=5)
    assert_clean(report)
    laws = {check.id: check for check in report.checks if check.id.startswith("corollary35.")}
    assert {check.status for check in laws.values()} == {"pass"}
    assert laws["corollary35.conservation"].witness["samples"] == 1000


def test_suites_release_process_memos():
    group = ffgroup.full_group(4, 2)
    classes = ffgroup.conjugacy_classes(group)
    table = charoracle.irr_table(group)
    assert_clean(suites.run_suite("lemma21", 4, 2))
    assert ffgroup.conjugacy_classes(group) is not classes
    assert charoracle.irr_table(group) is not table


def test_mackey_suite_at_small_rank():
    report = suites.run_suite("mackey7", 5, 2, pairs=5, seed=1)
    assert_clean(report)
    assert set(statuses(report)) == {"mackey.single", "mackey.crossing-pair", "mackey.distinct"}


@pytest.mark.slow
def test_mackey_suite_at_rank_seven():
    report = suites.run_suite("mackey7", 7, 2, pairs=10)
    assert_clean(report)
    norms = {check.id: check.witness.get("norm") for check in report.checks}
    assert norms["mackey.case-iii"] == 4
    assert norms["mackey.case-v"] == 8
    assert norms["mackey.crossing-pair"] == 2


def test_caps_skip_instead_of_failing():
    models.config = models.OracleConfig(enum_cap=10)
    report = suites.run_suite("lemma21", 3, 2)
    assert not report.failed
    assert report.skipped
