import random

import pytest
from hypothesis import given, strategies as st

from app.exceptions import GraphError, GuardError, InvalidSequenceError
from app.graph import Graph, components
from app.services.circumference import circumference
from app.services.extremal import ExtremalParams, generate
from app.services.ocycle import (
    AcyclicTree,
    CycleSeq,
    OCycleSeq,
    OneHeavyStarCut,
    OPathSeq,
    TwoHeavyBridge,
    certificate_pattern,
    certificate_to_schema,
    deficit,
    find_any_cycle,
    has_heavy_cycle_exhaustive,
    heavy_cycle_or_certificate,
    long_opath_violations,
    realize,
    realize_steps,
    validate_certificate,
)
from app.services.patterns import complete, cycle, path, star
from app.services.theorems import plant_ocycle

from .strategies import connected_graphs, graphs

# K4 sans l'arête 01: d(0) + d(1) = 4 = n, donc 01 est dans Ē
K4_MINUS = complete(4).remove_edge(0, 1)


def test_cycle_validation():
    with pytest.raises(InvalidSequenceError):
        CycleSeq.of(cycle(4), [0, 1])
    with pytest.raises(InvalidSequenceError):
        CycleSeq.of(cycle(4), [0, 1, 0])
    with pytest.raises(InvalidSequenceError) as info:
        CycleSeq.of(cycle(4), [0, 1, 2])
    assert info.value.pair == (2, 0)


def test_ocycle_and_opath_validation():
    assert len(OCycleSeq.of(K4_MINUS, [0, 1, 2])) == 3
    with pytest.raises(InvalidSequenceError):
        OCycleSeq.of(cycle(6), [0, 1, 2])
    assert OPathSeq.of(K4_MINUS, [0, 1]).ends == (0, 1)


def test_segments():
    c = CycleSeq.of(cycle(5), [0, 1, 2, 3, 4])
    assert c.segment(1, 3) == (1, 2, 3)
    assert c.segment(1, 3, backward=True) == (1, 0, 4, 3)
    assert CycleSeq((2, 0, 1)).canonical() == (0, 1, 2)


def test_deficit():
    assert deficit(K4_MINUS, [0, 1, 2]) == 1
    assert deficit(K4_MINUS, [0, 2, 1, 3]) == 0


def test_realize_inserts_common_neighbour():
    trace = realize_steps(K4_MINUS, [0, 1, 2])
    assert trace.initial_deficit == 1
    assert [(s.case, s.pivot) for s in trace.steps] == [("A", 3)]
    assert trace.cycle.vertex_set == frozenset(range(4))


def test_realize_uses_crossing_when_no_vertex_is_left():
    trace = realize_steps(K4_MINUS, [0, 1, 2, 3])
    assert [(s.case, s.pivot) for s in trace.steps] == [("B", 2)]
    assert trace.cycle.verts == (1, 2, 0, 3)


def test_realize_rejects_invalid_ocycle():
    with pytest.raises(InvalidSequenceError):
        realize(cycle(6), [0, 2, 4])


@given(connected_graphs(min_n=3, max_n=12), st.integers(min_value=0, max_value=2**16))
def test_realize_on_planted_ocycles(g: Graph, seed: int):
    planted = plant_ocycle(g, random.Random(seed))
    if planted is None:
        return
    trace = realize_steps(g, planted)
    assert CycleSeq.of(g, trace.cycle.verts) == trace.cycle
    assert set(planted) <= trace.cycle.vertex_set
    assert len(trace.steps) <= trace.initial_deficit


def test_heavy_cycle_for_complete_graph():
    result = heavy_cycle_or_certificate(complete(4))
    assert isinstance(result, CycleSeq)
    assert result.vertex_set == frozenset(range(4))


def test_certificates_by_case():
    assert isinstance(heavy_cycle_or_certificate(path(5)), AcyclicTree)

    cut = heavy_cycle_or_certificate(star(3))
    assert isinstance(cut, OneHeavyStarCut)
    assert cut.x == 0 and cut.attach == (1, 2, 3)

    t1 = generate(ExtremalParams("T1", n=8))
    bridge = heavy_cycle_or_certificate(t1.graph)
    assert isinstance(bridge, TwoHeavyBridge)
    assert (bridge.x, bridge.y) == (0, 4)
    assert validate_certificate(t1.graph, bridge)


def test_heavy_cycle_needs_connected_graph():
    with pytest.raises(GraphError):
        heavy_cycle_or_certificate(Graph(3, [(0, 1)]))


def test_invalid_certificate_reports_reasons():
    check = validate_certificate(cycle(4), AcyclicTree())
    assert not check
    assert "graph is not a tree" in check.reasons


def test_certificate_pattern_and_schema():
    t2 = generate(ExtremalParams("T2", n=6)).graph
    cert = certificate_pattern(t2)
    assert isinstance(cert, TwoHeavyBridge)
    out = certificate_to_schema(cert)
    assert out.kind == "bridge"
    assert out.side_x == [0, 1, 2] and out.side_y == [3, 4, 5]
    assert certificate_pattern(cycle(5)) is None


@given(connected_graphs(max_n=8))
def test_exhaustive_search_agrees_with_constructor(g: Graph):
    found = has_heavy_cycle_exhaustive(g)
    result = heavy_cycle_or_certificate(g)
    assert (found is None) == (not isinstance(result, CycleSeq))


def test_exhaustive_guard():
    with pytest.raises(GuardError):
        has_heavy_cycle_exhaustive(cycle(17))


@given(graphs(max_n=8))
def test_find_any_cycle(g: Graph):
    found = find_any_cycle(g)
    forest = g.edge_count == g.n - len(components(g))
    assert (found is None) == forest


@given(connected_graphs(max_n=6))
def test_no_long_opath_closes(g: Graph):
    assert long_opath_violations(g, circumference(g).length) == []
