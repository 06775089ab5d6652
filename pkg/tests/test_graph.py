import math
import pickle

import networkx as nx
import pytest
from hypothesis import given

from app.exceptions import GraphError
from app.graph import (
    Graph,
    articulation_points,
    biconnected_components,
    components,
    distance,
    is_connected,
    is_tree,
    is_two_connected,
    shortest_path,
)
from app.services.patterns import complete, cycle, disjoint_union, path, petersen

from .strategies import graphs


def test_basic_accessors():
    g = path(4)
    assert g.n == 4
    assert g.edge_count == 3
    assert g.degrees == (1, 2, 2, 1)
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 3) and not g.has_edge(0, 3)


def test_invalid_edges_are_rejected():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph.from_masks(2, [0b10, 0b00])


def test_degree_within_subgraph():
    g = complete(5)
    assert g.degree_in(0, [1, 2]) == 2
    assert g.neighbors_in(0, [0, 3, 4]) == (3, 4)


def test_induced_and_removal_keep_relative_order():
    g = cycle(5)
    sub, mapping = g.induced([4, 0, 1])
    assert mapping == {0: 0, 1: 1, 4: 2}
    assert sorted(sub.edges()) == [(0, 1), (0, 2)]
    rest, _ = g.remove_vertices([0])
    assert rest == path(4)


def test_edge_edits_return_new_graphs():
    g = cycle(4)
    h = g.remove_edge(0, 1)
    assert g.has_edge(0, 1) and not h.has_edge(0, 1)
    assert h.add_edge(0, 1) == g
    with pytest.raises(GraphError):
        h.remove_edge(0, 1)


def test_components_sorted_by_smallest_vertex():
    g = disjoint_union(path(2), cycle(3))
    assert components(g) == [frozenset({0, 1}), frozenset({2, 3, 4})]
    assert not is_connected(g)


def test_connectivity_edge_cases():
    assert not is_connected(Graph(0))
    assert is_connected(Graph(1))
    assert is_tree(path(5))
    assert not is_two_connected(complete(2))
    assert is_two_connected(cycle(3))


def test_distances():
    g = cycle(6)
    assert distance(g, 0, 3) == 3
    assert distance(disjoint_union(path(2), path(2)), 0, 3) == math.inf
    assert shortest_path(g, 0, 2) == [0, 1, 2]
    assert shortest_path(g, 0, 3, within=0b111001) == [0, 5, 4, 3]
    assert shortest_path(disjoint_union(path(2), path(2)), 0, 2) is None


def test_petersen_is_two_connected():
    g = petersen()
    assert is_two_connected(g)
    assert articulation_points(g) == frozenset()


def test_complement_and_relabel():
    g = path(3)
    assert g.complement().edges() == [(0, 2)]
    assert g.relabel([1, 0, 2]).edges() == [(0, 1), (0, 2)]
    with pytest.raises(GraphError):
        g.relabel([0, 0, 1])


def test_graph_pickles():
    g = petersen()
    assert pickle.loads(pickle.dumps(g)) == g


@given(graphs(max_n=10))
def test_networkx_round_trip(g: Graph):
    assert Graph.from_networkx(g.to_networkx()) == g


@given(graphs(max_n=10))
def test_articulation_points_match_networkx(g: Graph):
    assert articulation_points(g) == frozenset(nx.articulation_points(g.to_networkx()))


@given(graphs(max_n=10))
def test_blocks_match_networkx(g: Graph):
    expected = sorted((frozenset(b) for b in nx.biconnected_components(g.to_networkx())), key=sorted)
    assert biconnected_components(g) == expected


@given(graphs(min_n=3, max_n=10))
def test_two_connectivity_matches_networkx(g: Graph):
    assert is_two_connected(g) == nx.is_biconnected(g.to_networkx())
