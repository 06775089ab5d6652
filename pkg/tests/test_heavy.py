from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from app.exceptions import GraphError, GuardError
from app.graph import Graph
from app.services.heavy import (
    ebar,
    heavy_profile,
    heavy_vertices,
    induced_occurrences,
    is_heavy_cycle,
    is_pattern_free,
    is_pattern_heavy,
)
from app.services.patterns import (
    C4,
    K1_3,
    K1_4,
    K1_5,
    K3,
    P3,
    P4,
    complete,
    cycle,
    parse_pattern,
    path,
    petersen,
    star,
)
from app.services.theorems import connected_corpus

from .strategies import graphs


def naive_images(g: Graph, pattern: Graph):
    """Oracle: sous-ensembles dont le sous-graphe induit est isomorphe au motif"""
    host = g.to_networkx()
    target = pattern.to_networkx()
    return {
        frozenset(subset)
        for subset in combinations(range(g.n), pattern.n)
        if nx.is_isomorphic(host.subgraph(subset), target)
    }


def test_heavy_vertices_of_star():
    assert heavy_vertices(star(4)) == frozenset({0})
    profile = heavy_profile(complete(4))
    assert profile.count == 4


def test_ebar_relation():
    g = complete(4).remove_edge(0, 1)
    assert ebar(g, 0, 1)
    assert not ebar(cycle(6), 0, 3)
    with pytest.raises(GraphError):
        ebar(g, 2, 2)


def test_heavy_cycle_predicate():
    g = star(3).add_edge(1, 2)
    assert is_heavy_cycle(g, [0, 1, 2])
    assert is_heavy_cycle(complete(4), [0, 1, 2, 3])
    assert not is_heavy_cycle(complete(4), [0, 1, 2])


def test_occurrence_counts():
    assert len(list(induced_occurrences(complete(4), K3))) == 4
    assert len(list(induced_occurrences(cycle(4), P3))) == 4
    assert list(induced_occurrences(complete(4), C4)) == []
    assert len(list(induced_occurrences(star(4), K1_3))) == 4


def test_witnesses_are_valid():
    for witness in induced_occurrences(petersen(), P4):
        assert witness.is_valid()
        assert len(witness.image) == 4


def test_pattern_size_guard():
    with pytest.raises(GuardError):
        list(induced_occurrences(complete(9), star(8)))


@pytest.mark.parametrize("pattern", [P3, P4, K3, C4, K1_3])
@given(g=graphs(max_n=7))
def test_occurrences_match_subset_oracle(pattern: Graph, g: Graph):
    found = {w.image for w in induced_occurrences(g, pattern)}
    assert found == naive_images(g, pattern)


def test_freeness_and_heaviness():
    assert is_pattern_free(complete(5), K1_3)
    # sans copie induite, la condition est vide
    assert is_pattern_heavy(complete(5), K1_3)
    check = is_pattern_heavy(K1_3, K1_3)
    assert not check
    assert check.witness.image == frozenset(range(4))
    assert is_pattern_free(petersen(), K3)


def test_parse_pattern():
    assert parse_pattern("K1_4") == star(4)
    assert parse_pattern("k1_k:2") == P3.relabel([1, 0, 2])
    with pytest.raises(GraphError):
        parse_pattern("k5")
    with pytest.raises(GuardError):
        parse_pattern("k1_k:8")


def matcher_images(g: Graph, pattern: Graph):
    matcher = nx.algorithms.isomorphism.GraphMatcher(g.to_networkx(), pattern.to_networkx())
    return {frozenset(mapping) for mapping in matcher.subgraph_isomorphisms_iter()}


@pytest.mark.parametrize("pattern", [K1_4, path(5), cycle(5)])
@given(g=graphs(max_n=10))
def test_five_vertex_patterns_match_graph_matcher(pattern: Graph, g: Graph):
    found = {w.image for w in induced_occurrences(g, pattern)}
    assert found == matcher_images(g, pattern)


CHAINS = [(P3, P4), (K1_3, K1_4), (K1_4, K1_5)]


def test_freeness_and_heaviness_are_monotone():
    for g in connected_corpus(7):
        for small, large in CHAINS:
            if is_pattern_free(g, small):
                assert is_pattern_free(g, large), (g, small, large)
            if is_pattern_heavy(g, small):
                assert is_pattern_heavy(g, large), (g, small, large)
