import json

import pytest

from rookposet.instances import Family, InstanceSpec, build_rook, build_rook_rank_level
from rookposet.poset import GradedPoset, iter_bits
from rookposet.verify import (
    ALL_CHECKS,
    CampaignConfig,
    Check,
    CheckTally,
    Scope,
    find_failing_mutation,
    mutate,
    parse_checks,
    run_campaign,
    run_checks,
    sample_intervals,
    verify_el,
    verify_length2,
    verify_order_equivalence,
)


def test_parse_checks_aliases():
    assert parse_checks("all") == ALL_CHECKS
    assert parse_checks("el") == (Check.EL_UNIQUE, Check.LEX_FIRST_INCREASING)
    assert parse_checks("el,length2,mobius-range") == (
        Check.EL_UNIQUE,
        Check.LEX_FIRST_INCREASING,
        Check.DIAMOND_LABELS,
        Check.CHAIN_OR_DIAMOND,
        Check.MOBIUS_RANGE,
    )
    assert parse_checks("mobius_descending") == (Check.MOBIUS_DESCENDING,)
    for bad in ("", "el,nope", ","):
        with pytest.raises(ValueError):
            parse_checks(bad)


def test_scope_parse():
    assert Scope.parse("all") == Scope()
    assert Scope.parse("length2").kind == "length2"
    assert Scope.parse("bounded:3").maxlen == 3
    s = Scope.parse("sample:500:7")
    assert (s.kind, s.count, s.seed) == ("sample", 500, 7)
    assert Scope.parse(str(s)) == s
    for bad in ("sample:0:1", "bounded:0", "bounded", "some", "sample:x:1"):
        with pytest.raises(ValueError):
            Scope.parse(bad)


@pytest.mark.parametrize("instance", ["rook:1", "rook:2", "rook:3", "sym:3", "sym:4", "rook:3:1", "rook:3:2"])
def test_campaign_passes(instance):
    report = run_campaign(CampaignConfig(InstanceSpec.parse(instance)))
    assert report.ok, report.to_text()


def test_rank_level_skips_edelman():
    report = run_campaign(CampaignConfig(InstanceSpec.parse("rook:3:2"), checks=(Check.EDELMAN_RESTRICTION,)))
    assert report.tallies[Check.EDELMAN_RESTRICTION].skipped


def test_el_tallies_r3(r3):
    report = verify_el(r3)
    t = report.tallies[Check.EL_UNIQUE]
    assert t.checked == 407 and t.failed == 0
    assert report.tallies[Check.LEX_FIRST_INCREASING].checked == 407


def test_scopes_restrict_intervals(r3):
    bounded = verify_el(r3, Scope.parse("bounded:2")).tallies[Check.EL_UNIQUE].checked
    length2 = verify_el(r3, Scope.parse("length2")).tallies[Check.EL_UNIQUE].checked
    sampled = verify_el(r3, Scope.parse("sample:50:1")).tallies[Check.EL_UNIQUE].checked
    pairs = [(x, y) for x in range(len(r3)) for y in iter_bits(r3.up_reach[x]) if x != y]
    assert bounded == sum(1 for x, y in pairs if r3.ranks[y] - r3.ranks[x] <= 2)
    assert length2 == sum(1 for x, y in pairs if r3.ranks[y] - r3.ranks[x] == 2)
    assert sampled == 50


def test_sample_intervals_deterministic(r3):
    a = sample_intervals(r3, 100, 5)
    assert a == sample_intervals(r3, 100, 5)
    assert a != sample_intervals(r3, 100, 6)
    assert len(set(a)) == 100
    assert all(x != y and r3.up_reach[x] >> y & 1 for x, y in a)
    assert len(sample_intervals(r3, 10**6, 0)) == 407


def test_length2_counts_r3(r3):
    report = verify_length2(r3)
    assert report.ok
    shapes = report.tallies[Check.CHAIN_OR_DIAMOND].aux
    assert shapes["chains"] + shapes["diamonds"] == report.tallies[Check.CHAIN_OR_DIAMOND].checked


def test_order_equivalence_r3():
    assert verify_order_equivalence(3).ok


def test_ungraded_poset_fails_el():
    p = GradedPoset(["a", "b", "c"], [0, 1, 2], [(0, 1, 1), (1, 2, 2)], graded=False, validate=False)
    assert not verify_el(p).ok


def test_unlabeled_poset_skips_el():
    p = GradedPoset(["a", "b", "c"], [0, 1, 2], [(0, 1, None), (1, 2, None)])
    report = verify_el(p)
    assert report.tallies[Check.EL_UNIQUE].skipped


def test_tally_merge_and_trim():
    a, b = CheckTally(), CheckTally()
    a.record(True)
    a.record(False, (3,), {"w": 3})
    b.record(False, (1,), {"w": 1})
    b.aux["k"] += 2
    a.merge(b)
    a.trim(1)
    assert (a.checked, a.failed, a.passed) == (3, 2, 1)
    assert a.witnesses == [((1,), {"w": 1})]
    assert a.as_dict()["aux"] == {"k": 2}


def test_mutation_is_seeded(r3):
    a, b = mutate(r3, "swap-labels", 4), mutate(r3, "swap-labels", 4)
    assert list(a.edges()) == list(b.edges())
    assert list(a.edges()) != list(r3.edges())


@pytest.mark.parametrize("check", list(Check))
def test_every_check_has_a_failing_mutation(check, r3):
    assert find_failing_mutation(r3, check, family=Family.ROOK) is not None


def test_witnesses_capped(r3):
    bad = mutate(r3, "swap-labels", 0)
    report = run_checks(bad, {Check.EL_UNIQUE}, family=Family.ROOK, witness_cap=2)
    t = report.tallies[Check.EL_UNIQUE]
    assert t.failed >= 1 and len(t.witnesses) <= 2
    w = t.as_dict()["witnesses"][0]
    assert {"interval", "length", "increasing_chains", "lex_first"} <= set(w)
    assert w["increasing_chains"] != 1
    json.dumps(w)  # witnesses are plain JSON


def test_report_determinism_across_workers():
    config = CampaignConfig(InstanceSpec.parse("rook:3"))
    one = run_campaign(config, workers=1).to_json()
    many = run_campaign(config, workers=3).to_json()
    assert one == many
    assert "timings" not in json.loads(one)
    assert "timings" in run_campaign(config).to_dict(include_timing=True)


def test_report_text():
    report = run_campaign(CampaignConfig(InstanceSpec.parse("rook:2"), checks=parse_checks("el")))
    text = report.to_text()
    assert "el-unique" in text and "PASS" in text and text.rstrip().endswith("OK")


def test_mobius_range_on_rank_levels():
    q = build_rook_rank_level(3, 1)
    report = run_checks(q, {Check.MOBIUS_RANGE}, family=Family.ROOK_RANK_LEVEL)
    assert report.ok and report.tallies[Check.MOBIUS_RANGE].checked > 0


def test_failing_mutation_fails_campaign_exit(r3):
    bad = mutate(r3, "perturb-rank", 0)
    assert not run_checks(bad, {Check.LENGTH_FORMULAS}, family=Family.ROOK).ok
