import pytest
from hypothesis import given, settings, strategies as st

from conftest import nf
from graphprod.cayley import CayleyGraph
from graphprod.cosets import decompose, in_FG, in_RF, left_coset_rep, p_F, r_F, subgroup_ball
from graphprod.errors import UnknownVertex
from graphprod.fixtures import load_fixture
from graphprod.graphs import ball_bfs
from graphprod.words import IDENTITY, invert, multiply, normal_form
from oracles import RewritingOracle

E = load_fixture("z2xz2")      # edge 0-1
D = load_fixture("dihedral")   # no edge
P3 = load_fixture("path3")


def test_membership_examples():
    assert in_FG(IDENTITY, [], E) and in_FG(IDENTITY, [1], E)
    assert in_FG(nf("0:1", E), [0], E)
    assert not in_FG(nf("0:1 1:1", D), [1], D)
    assert in_RF(IDENTITY, [0, 1], E)
    assert in_RF(nf("0:1", E), [1], E)
    assert not in_RF(nf("0:1 1:1", E), [1], E)


def test_decompose_examples():
    g = nf("0:1 1:1", E)
    assert decompose(g, [0, 1], E).p == g and decompose(g, [0, 1], E).r == IDENTITY
    dec = decompose(g, [1], E)
    assert (dec.p, dec.r) == (nf("1:1", E), nf("0:1", E))
    dec = decompose(nf("0:1 1:1", D), [1], D)
    assert (dec.p, dec.r) == (IDENTITY, nf("0:1 1:1", D))


def test_left_coset_rep_examples():
    assert left_coset_rep(nf("0:1 1:1", E), [0, 1], E) == IDENTITY
    assert left_coset_rep(nf("0:1 1:1", E), [1], E) == nf("0:1", E)
    assert left_coset_rep(nf("0:1", P3), [2], P3) == nf("0:1", P3)


def test_unknown_vertex_in_F():
    with pytest.raises(UnknownVertex):
        in_RF(IDENTITY, [4], E)


def test_subgroup_ball():
    assert subgroup_ball([0, 2], P3, 2) == [IDENTITY, nf("0:1", P3), nf("2:1", P3),
                                             nf("0:1 2:1", P3), nf("2:1 0:1", P3)]


@pytest.mark.parametrize("name", ["z2xz2", "dihedral", "path3", "path3-z3", "triangle"])
def test_decompose_against_exhaustive_search(name):
    """Unique p in F𝒢 with p^-1 g in R_F, R_F decided from the rewriting oracle."""
    G = load_fixture(name)
    oracle = RewritingOracle(G)
    X = CayleyGraph(G)
    ball = ball_bfs(X, X.origin, 3).vertices
    subsets = [frozenset(v for i, v in enumerate(G.vertices) if m >> i & 1) for m in range(1 << len(G.vertices))]
    for F in subsets:
        FG = subgroup_ball(F, G, 3)
        for g in ball:
            hits = [p for p in FG if oracle.in_RF(multiply(invert(p, G), g, G), F)]
            dec = decompose(g, F, G)
            assert hits == [dec.p]
            assert multiply(dec.p, dec.r, G) == g
            assert in_RF(g, F, G) == oracle.in_RF(g, F)


GRAPHS = {n: load_fixture(n) for n in ["path3", "square-free", "c4-z3", "star3", "mixed", "path4-z3"]}


@st.composite
def element_and_F(draw, max_len=8):
    G = GRAPHS[draw(st.sampled_from(sorted(GRAPHS)))]
    gens = [(v, x) for v, grp in G.groups.items() for x in grp.nontrivial()]
    g = normal_form(draw(st.lists(st.sampled_from(gens), max_size=max_len)), G)
    F = draw(st.frozensets(st.sampled_from(G.vertices)))
    return G, g, F, gens


@settings(max_examples=200, deadline=None)
@given(element_and_F(), st.data())
def test_coset_laws(t, data):
    G, g, F, gens = t
    dec = decompose(g, F, G)
    assert in_FG(dec.p, F, G) and in_RF(dec.r, F, G)
    assert len(dec.p) + len(dec.r) == len(g)
    # left law: p_F(hg) = h p_F(g) for h in F𝒢
    hw = data.draw(st.lists(st.sampled_from([s for s in gens if s[0] in F] or [None]), max_size=4))
    h = normal_form([s for s in hw if s is not None], G)
    assert p_F(multiply(h, g, G), F, G) == multiply(h, dec.p, G)
    assert left_coset_rep(multiply(g, h, G), F, G) == left_coset_rep(g, F, G)
    # how p_F changes under a single syllable s in G_v
    s = data.draw(st.sampled_from(gens))
    v = s[0]
    gh = multiply(g, (s,), G)
    i = p_F(gh, F, G) != dec.p
    ii = v in F and r_F(g, F, G).support <= G.links[v]
    iii = p_F(gh, F, G) == multiply(dec.p, (s,), G)
    assert i == ii == iii
    # closure law on R_F
    if in_RF(g, F, G) and (len(gh) < len(g) + 1 or not g.support <= G.links[v] or v not in F):
        assert in_RF(gh, F, G)
