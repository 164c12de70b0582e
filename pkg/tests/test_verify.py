"""Verification harness: green on healthy runs, each witness trips on a
matching planted fault, strict/explore status split, report serialization."""
import copy
import json
import math

import pytest

from spanlab.backends import CompleteSpanner
from spanlab.graph import SpannerGraph
from spanlab.verify import (CheckEntry, VerificationReport, run_all,
                            verify_bag_reachability, verify_counters,
                            verify_degree, verify_hop_diameter,
                            verify_lightness, verify_stretch,
                            verify_structure)

from ._corrupt import CATALOG

STRUCTURE_CHECKS = {
    "q-partition", "native-partition", "set-chain", "empty-consistency",
    "rep-in-kernel", "kernel-rule", "label-flags", "adoption-links",
    "zombie-step-parent", "zombie-siblings", "zombie-chain-points",
    "representing-edges", "weight-caps", "level-degree-split", "q-size",
    "base-degree", "base-level-weight", "base-recursive-path", "base-order",
    "union-assembly",
}


def test_catalog_covers_every_structure_check():
    assert set(CATALOG) == STRUCTURE_CHECKS


@pytest.mark.parametrize("which", ["strict_small", "strict_grid"])
def test_run_all_green_strict(which, request):
    report = run_all(request.getfixturevalue(which))
    assert report.ok, report.to_text()
    by_name = {e.name: e for e in report.entries}
    assert by_name["stretch"].status == "pass"
    assert by_name["hop-diameter"].status == "pass"
    assert by_name["stretch"].measured <= by_name["stretch"].bound
    assert STRUCTURE_CHECKS <= set(by_name)
    for name in STRUCTURE_CHECKS:
        assert by_name[name].status == "pass"
        assert by_name[name].measured == 0.0


def test_run_all_explore_no_hard_failures(explore_mid):
    report = run_all(explore_mid)
    assert report.ok, report.to_text()
    for e in report.entries:
        if e.tag == "ANY":
            assert e.status == "pass", e.name


def test_structure_green_on_pristine(explore_mid):
    for e in verify_structure(explore_mid):
        assert e.status == "pass", f"{e.name}: {e.detail}"


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_fault_injection_trips_named_check(name, explore_mid):
    bundle = copy.deepcopy(explore_mid)
    CATALOG[name](bundle)
    entries = {e.name: e for e in verify_structure(bundle)}
    assert entries[name].status == "fail", \
        f"{name} did not trip: {entries[name]}"
    assert entries[name].measured >= 1.0
    assert entries[name].detail


def test_counter_fault_strict_vs_explore(strict_small, explore_mid):
    strict = copy.deepcopy(strict_small)
    strict.counters.large[0] = 5
    got = {e.name: e for e in verify_counters(strict)}
    assert got["counter-large"].status == "fail"
    assert got["counter-large"].measured == 5.0

    soft = copy.deepcopy(explore_mid)
    soft.counters.large[0] = 5
    got = {e.name: e for e in verify_counters(soft)}
    assert got["counter-large"].status == "info"


def test_stretch_fail_on_gutted_graph(strict_small):
    bundle = copy.deepcopy(strict_small)
    bundle.graph = SpannerGraph(bundle.metric.n)
    entry = verify_stretch(bundle)
    assert entry.status == "fail"
    assert math.isinf(entry.measured)
    # non-finite values survive serialization as strings
    payload = json.loads(json.dumps(entry.as_dict()))
    assert payload["measured"] == "inf"


def test_caps_turn_checks_into_skips(strict_small):
    assert verify_stretch(strict_small, cap=10).status == "skipped"
    assert verify_hop_diameter(strict_small, cap=10).status == "skipped"


def test_hop_with_injected_backend(strict_small):
    entry = verify_hop_diameter(strict_small, backend=CompleteSpanner())
    assert entry.status == "pass"
    n, rho = 64, strict_small.cfg.rho
    want = 12.0 * (1 + math.log(n) / math.log(rho) + rho)
    assert entry.bound == pytest.approx(want)


def test_degree_and_lightness_entries(strict_small):
    deg = verify_degree(strict_small)
    assert deg.status == "pass"
    assert deg.measured == float(strict_small.graph.max_degree())
    light = verify_lightness(strict_small)
    assert light.status == "pass"
    assert light.measured >= 1.0


def test_bag_reachability_fraction(strict_small):
    entries = verify_bag_reachability(strict_small)
    names = [e.name for e in entries]
    assert names == ["bag-reach-base", "bag-pair-weight"]
    for e in entries:
        assert e.status == "pass"
        assert e.tag == "STRICT"
        assert 0.0 <= e.measured <= 1.0 + 1e-9


def test_stretch_target_override_fails_closed(strict_small):
    report = run_all(strict_small, stretch_target=1.0)
    assert not report.ok
    by_name = {e.name: e for e in report.entries}
    assert by_name["stretch"].status == "fail"
    assert "HARD FAILURE" in report.to_text()


def test_report_mechanics():
    r = VerificationReport()
    r.add(CheckEntry("a", "ANY", "pass", measured=0.0, bound=0.0))
    r.add([CheckEntry("b", "STRICT", "fail", measured=2.0, bound=1.0),
           CheckEntry("c", "STRICT", "info")])
    assert len(r.entries) == 3
    assert [e.name for e in r.failures] == ["b"]
    assert not r.ok
    text = r.to_text()
    assert "1 HARD FAILURE(S) (3 checks)" in text
    data = json.loads(r.to_json())
    assert data["ok"] is False
    assert [e["name"] for e in data["entries"]] == ["a", "b", "c"]
