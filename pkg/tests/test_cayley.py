import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import nf
from graphprod.cayley import CayleyGraph, cayley_neighbors, edge_label_distance_check
from graphprod.errors import InvalidInput
from graphprod.fixtures import load_fixture
from graphprod.graphs import ball_bfs
from graphprod.words import IDENTITY, generators, multiply, normal_form
from oracles import to_nx


def test_neighbor_examples():
    X = CayleyGraph(load_fixture("z3"))
    assert len(cayley_neighbors(X, IDENTITY)) == 2
    E = load_fixture("z2xz2")
    assert {y for y, _ in cayley_neighbors(CayleyGraph(E), IDENTITY)} == {nf("0:1", E), nf("1:1", E)}
    D = load_fixture("dihedral")
    assert {y for y, _ in cayley_neighbors(CayleyGraph(D), nf("0:1", D))} == {IDENTITY, nf("0:1 1:1", D)}


def test_labels():
    G = load_fixture("path3")
    assert edge_label_distance_check((0, 1), (0, 1), G) == 0
    assert edge_label_distance_check((0, 1), (1, 1), G) == 1
    assert edge_label_distance_check((0, 1), (2, 1), G) == 2
    assert edge_label_distance_check((0, 1), (2, 1), load_fixture("mixed")) == math.inf
    X = CayleyGraph(G)
    assert X.edge_label(nf("0:1", G), nf("0:1 2:1", G)) == (2, 1)
    with pytest.raises(InvalidInput):
        X.edge_label(IDENTITY, nf("0:1 2:1", G))


def test_neighbors_are_distinct_and_symmetric():
    G = load_fixture("mixed")
    X = CayleyGraph(G)
    for x in ball_bfs(X, IDENTITY, 2).vertices:
        nbrs = X.neighbors(x)
        assert len(set(nbrs)) == len(nbrs) == len(generators(G))
        assert all(x in X.neighbors(y) for y in nbrs)


@pytest.mark.parametrize("name", ["path3", "square-free", "mixed", "s3-edge", "path4-z3"])
def test_word_metric_and_bfs_distance(name):
    G = load_fixture(name)
    X = CayleyGraph(G)
    ball = ball_bfs(X, IDENTITY, 4, cap=20_000)
    for g, d in ball.distance.items():
        assert d == len(g) == X.distance(IDENTITY, g)


@pytest.mark.parametrize("name", ["path3", "c4-z3", "s3-free"])
def test_vertex_transitive_spheres(name):
    G = load_fixture(name)
    X = CayleyGraph(G)
    ref = ball_bfs(X, IDENTITY, 3).sphere_sizes
    for g in ball_bfs(X, IDENTITY, 2).vertices:
        assert ball_bfs(X, g, 3).sphere_sizes == ref


def test_distance_matches_networkx_on_finite_group():
    # Z2 x Z3 is finite: compare the implicit metric with networkx on the whole group
    G = load_fixture("mixed")
    G2 = type(G)({0: G.groups[0], 1: G.groups[1]}, [(0, 1)])
    X = CayleyGraph(G2)
    ball = ball_bfs(X, IDENTITY, 10)
    assert ball.component_complete and len(ball) == 6
    H = to_nx(X, ball.vertices)
    d = dict(nx.all_pairs_shortest_path_length(H))
    for x in ball.vertices:
        for y in ball.vertices:
            assert X.distance(x, y) == d[x][y]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([(v, 1) for v in range(5)]), max_size=8),
       st.lists(st.sampled_from([(v, 1) for v in range(5)]), max_size=8))
def test_left_invariance(w1, w2):
    G = load_fixture("square-free")
    X = CayleyGraph(G, cache_size=64)
    x, y = normal_form(w1, G), normal_form(w2, G)
    g = nf("0:1 2:1", G)
    assert X.distance(x, y) == X.distance(multiply(g, x, G), multiply(g, y, G)) == X.distance(y, x)
