import json
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from graphprod.defining_graph import (DefiningGraph, finiteness_predicates, graph_summary, load_graph,
                                      neighborhood_query)
from graphprod.errors import (DuplicateEdge, InvalidInput, LoopEdge, NoIdentity, TrivialVertexGroup,
                              UnknownVertex)
from graphprod.fixtures import fixture_names, load_fixture
from graphprod.graphs import girth
from graphprod.groups import cyclic_group


def doc(n, edges, order=2):
    return {"vertices": [{"id": i, "group": {"type": "cyclic", "n": order}} for i in range(n)],
            "edges": [list(e) for e in edges]}


def test_path_is_a_tree():
    G = load_graph(doc(3, [(0, 1), (1, 2)]))
    assert G.girth == math.inf


def test_triangle_flagged():
    G = load_graph(doc(3, [(0, 1), (1, 2), (0, 2)]))
    s = graph_summary(G)
    assert s["girth"] == 3 and not s["girth_gt_4"]


@pytest.mark.parametrize("d, exc", [
    (doc(2, [(1, 1)]), LoopEdge),
    (doc(2, [(0, 1), (1, 0)]), DuplicateEdge),
    (doc(2, [(0, 5)]), UnknownVertex),
    (doc(2, [], order=1), TrivialVertexGroup),
    ({"vertices": [{"id": 0, "group": {"type": "table", "table": [[0, 1], [0, 1]]}}]}, NoIdentity),
    ({"edges": []}, InvalidInput),
    ({"vertices": [{"id": 0}, {"id": 0}]}, InvalidInput),
    ({"vertices": [{"id": "a"}]}, InvalidInput),
])
def test_rejections(d, exc):
    with pytest.raises(exc):
        load_graph(d)


def test_unknown_vertex_is_a_key_error():
    G = load_fixture("path3")
    with pytest.raises(KeyError):
        G.link(9)


def test_path_queries():
    G = load_fixture("path3")
    assert neighborhood_query(G, 1, "link") == {0, 2}
    assert neighborhood_query(G, 1, "star") == {0, 1, 2}
    assert neighborhood_query(G, 0, "is_leaf") is True
    assert neighborhood_query(G, 1, "elink") == {(1, 0), (1, 2)}
    with pytest.raises(ValueError):
        neighborhood_query(G, 1, "nope")


def test_predicates():
    p = finiteness_predicates(load_fixture("path3"))
    assert p.leaves == {0, 2} and p.non_leaf_count == 1 and p.diameter == 2
    p = finiteness_predicates(load_fixture("square-free"))
    assert p.leaves == set() and p.non_leaf_count == 5
    p = finiteness_predicates(load_fixture("star3"))
    assert p.non_leaves == {0} and p.link_non_leaf[0] == 0
    p = finiteness_predicates(load_fixture("mixed"))
    assert p.diameter == math.inf and p.diam_gt_2


def test_doc_round_trip(tmp_path):
    for name in fixture_names():
        G = load_fixture(name)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(G.to_doc()))
        assert load_graph(path) == G


def test_dot_marks_leaves():
    dot = load_fixture("path3").to_dot()
    assert dot.startswith("graph Gamma {")
    assert dot.count("gray") == 2 and dot.count(" -- ") == 2


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, edges


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_queries_and_girth_against_networkx(g):
    n, edges = g
    G = DefiningGraph({i: cyclic_group(2) for i in range(n)}, edges)
    H = nx.Graph()
    H.add_nodes_from(range(n))
    H.add_edges_from(edges)
    for v in range(n):
        assert G.link(v) == set(H[v])
        assert G.star(v) == set(H[v]) | {v}
        assert G.is_leaf(v) == (H.degree(v) <= 1)
    assert G.girth == nx.girth(H)
    assert G.girth == girth(G.as_graph, n)
    diam = finiteness_predicates(G).diameter
    assert diam == (nx.diameter(H) if nx.is_connected(H) else math.inf)
