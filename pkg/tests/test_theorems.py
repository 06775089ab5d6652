import logging

import pytest

from app.exceptions import GraphError
from app.graph import Graph
from app.graph6 import to_graph6
from app.schemas import Counterexample, TheoremReport
from app.services import theorems
from app.services.circumference import Budget, every_longest_cycle_heavy
from app.services.extremal import INCONCLUSIVE, ExtremalParams, generate
from app.services.patterns import complete, cycle, path, star
from app.services.theorems import (
    COUNTEREXAMPLE,
    HOLDS,
    SKIPPED,
    GraphOutcome,
    aggregate,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    check_theorem4,
    connected_corpus,
    fan_condition,
    find_obstruction,
    recheck,
    verify_corpus,
    verify_lemma1,
    verify_opath_remark,
    verify_reduction_fact,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    verify_theorem4,
    verify_theorem5_necessity,
)


def test_fan_condition():
    assert fan_condition(complete(5))
    assert not fan_condition(cycle(6))
    with pytest.raises(GraphError):
        fan_condition(Graph(4, [(0, 1), (2, 3)]))


def test_per_graph_checks():
    assert check_theorem1(complete(4)).status == HOLDS
    assert check_theorem1(path(4)).tags == ("not_two_connected",)
    assert check_theorem3(cycle(6)).tags == ("fan_fails",)
    assert check_theorem3(complete(5)).status == HOLDS
    assert check_theorem4(complete(5)).status == HOLDS


def test_theorem2_on_double_star():
    outcome = check_theorem2(generate(ExtremalParams("T1", n=8)).graph)
    assert outcome.status == HOLDS
    assert outcome.tags == ("no_heavy_cycle", "case_bridge")
    assert outcome.witness["certificate"]["kind"] == "bridge"


def test_theorem2_skips_large_graphs():
    assert check_theorem2(cycle(11)).tags == ("over_guard",)


@pytest.mark.parametrize(
    "verify", [verify_theorem1, verify_theorem2, verify_theorem3, verify_theorem4, verify_opath_remark]
)
def test_theorems_hold_up_to_six_vertices(verify):
    report = verify(connected_corpus(6), "connected n <= 6")
    assert report.verdict == "holds", report.counterexample
    assert report.stats["graphs"] == 1 + 1 + 2 + 6 + 21 + 112
    assert report.stats["inconclusive"] == 0


def test_theorem2_tags_every_graph():
    report = verify_theorem2(connected_corpus(5))
    assert report.stats["no_heavy_cycle"] + report.stats["heavy_cycle"] == report.stats["checked"]


def test_parallel_run_matches_sequential():
    sequential = verify_corpus("4", connected_corpus(5), "connected n <= 5", jobs=1)
    parallel = verify_corpus("4", connected_corpus(5), "connected n <= 5", jobs=2)
    assert sequential.model_dump() == parallel.model_dump()


def test_aggregate_keeps_smallest_counterexample():
    outcomes = [
        GraphOutcome(HOLDS, "C~"),
        GraphOutcome(COUNTEREXAMPLE, "Dhc", reason="second"),
        GraphOutcome(SKIPPED, "Bg", tags=("not_two_connected",)),
        GraphOutcome(COUNTEREXAMPLE, "D]w", reason="first"),
    ]
    report = aggregate("1", "explicit", outcomes)
    assert report.verdict == "counterexample"
    assert report.counterexample.graph6 == "D]w"
    assert report.stats == {"checked": 3, "graphs": 4, "inconclusive": 0, "not_two_connected": 1, "skipped": 1}
    assert aggregate("1", "explicit", reversed(outcomes)).model_dump() == report.model_dump()


def test_recheck():
    ok = TheoremReport(
        theorem="1",
        corpus="explicit",
        verdict="counterexample",
        counterexample=Counterexample(graph6=to_graph6(complete(4)), reason="forged"),
    )
    assert recheck(ok) is False
    assert recheck(TheoremReport(theorem="1", corpus="explicit", verdict="holds")) is False


@pytest.mark.parametrize(
    "g, kind, name",
    [
        (path(3), "special", "P3"),
        (star(3), "special", "K1_3"),
        (star(4), "special", "K1_4"),
        (star(6), "witness", "K1_5"),
        (path(5), "witness", "P4"),
        (cycle(5), "witness", "P4"),
        (cycle(4), "witness", "C4"),
        (complete(4), "witness", "K3"),
    ],
)
def test_find_obstruction(g, kind, name):
    found = find_obstruction(g)
    assert (found.kind, found.name) == (kind, name)
    if found.witness is not None:
        assert found.witness.is_valid()


def test_find_obstruction_guards():
    with pytest.raises(GraphError):
        find_obstruction(path(2))
    with pytest.raises(GraphError):
        find_obstruction(Graph(4, [(0, 1), (2, 3)]))


def test_reduction_fact():
    report = verify_reduction_fact(3, 6)
    assert report.verdict == "holds"
    assert report.stats["graphs"] == 2 + 6 + 21 + 112


def test_realization_lemma():
    report = verify_lemma1(instances=200, max_n=10, seed=1)
    assert report.verdict == "holds"
    assert report.stats["instances"] == 200
    assert report.stats["case_a"] + report.stats["case_b"] > 0
    assert verify_lemma1(instances=50, max_n=8, seed=3) == verify_lemma1(instances=50, max_n=8, seed=3)


@pytest.mark.slow
def test_theorem5_necessity():
    report = verify_theorem5_necessity()
    assert report.verdict == "holds", report.details
    assert report.stats["g1_passed"] == report.stats["g2_passed"] == report.stats["g3_passed"] == 1


def test_g1_fails_the_k1_4_hypothesis():
    outcome = check_theorem4(generate(ExtremalParams("G1", r=4, k=10)).graph)
    assert outcome.status == SKIPPED
    assert outcome.tags == ("not_k1_4_heavy",)


def longest_cycles_contain_heavy(g, budget=None):
    """Conclusion du théorème 4 sans son hypothèse K1,4-heavy"""
    check = every_longest_cycle_heavy(g, budget)
    if not check.holds:
        return GraphOutcome(COUNTEREXAMPLE, to_graph6(g), reason="longest cycle misses a heavy vertex")
    return GraphOutcome(HOLDS, to_graph6(g))


def test_recheck_confirms_a_genuine_counterexample(monkeypatch):
    bowtie = Graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    pendant = Graph(6, bowtie.edges() + [(4, 5)])
    monkeypatch.setitem(theorems.CHECKS, "4", longest_cycles_contain_heavy)
    report = verify_corpus("4", [complete(4), bowtie, pendant], "explicit", jobs=1)
    assert report.verdict == "counterexample"
    assert report.counterexample.graph6 == to_graph6(pendant)
    assert recheck(report) is True
    monkeypatch.setitem(theorems.CHECKS, "4", check_theorem4)
    assert recheck(report) is False


def test_summary_marker_follows_verdict(monkeypatch, caplog):
    caplog.set_level(logging.INFO, logger="app.services.theorems")
    monkeypatch.setitem(theorems.CHECKS, "1", lambda g, budget=None: GraphOutcome(INCONCLUSIVE, to_graph6(g)))
    assert verify_corpus("1", [complete(3)], "explicit", jobs=1).verdict == "inconclusive"
    assert "⚠️ théorème 1: inconclusive" in caplog.text
    assert "✅" not in caplog.text


def test_budget_reaches_the_check(monkeypatch):
    seen = []

    def recording(g, budget=None):
        seen.append(budget)
        return GraphOutcome(HOLDS, to_graph6(g))

    monkeypatch.setitem(theorems.CHECKS, "3", recording)
    budget = Budget(node_limit=50)
    verify_theorem3([complete(4), cycle(5)], budget=budget)
    assert seen == [budget, budget]


def test_exceptional_graphs_are_found_under_any_labeling():
    found = find_obstruction(star(4).relabel([3, 1, 4, 0, 2]))
    assert (found.kind, found.name, found.witness) == ("special", "K1_4", None)


@pytest.mark.slow
@pytest.mark.parametrize("verify", [verify_theorem1, verify_theorem2, verify_theorem3, verify_theorem4])
def test_theorems_hold_up_to_eight_vertices(verify):
    report = verify(connected_corpus(8), "connected n <= 8")
    assert report.verdict == "holds", report.counterexample
    assert report.stats["graphs"] == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117


@pytest.mark.slow
def test_opath_remark_up_to_seven_vertices():
    report = verify_opath_remark(connected_corpus(7), "connected n <= 7")
    assert report.verdict == "holds", report.counterexample
