import pytest
from hypothesis import given, settings, strategies as st

from conftest import nf
from graphprod.errors import CapExceeded, VertexGroupMismatch
from graphprod.fixtures import load_fixture
from graphprod.words import (IDENTITY, NormalForm, enumerate_normal_forms, enumerate_normal_forms_strict,
                             format_word, invert, is_geodesic, is_reduced_decomposition, multiply,
                             normal_form, parse_word, power, product_report, support_query)
from oracles import RewritingOracle, all_words, dihedral_letters, dihedral_reduce

D = load_fixture("dihedral")
P3 = load_fixture("path3")
SMALL = ["dihedral", "z2xz2", "z3", "path3", "path3-z3", "triangle"]
a, b = (0, 1), (1, 1)


def test_cancellation():
    G = load_fixture("z3")
    assert normal_form([(0, 1), (0, 2)], G) == IDENTITY


def test_commuting_swap_to_canonical_order():
    G = load_fixture("z2xz2")
    assert normal_form([(1, 1), (0, 1)], G) == ((0, 1), (1, 1))


def test_dihedral_examples():
    assert normal_form([a, b, a, b], D) == (a, b, a, b)
    ab = normal_form([a, b], D)
    xy, reduced = product_report(ab, ab, D)
    assert xy == (a, b, a, b) and reduced
    assert invert(ab, D) == (b, a)
    assert support_query(normal_form([a, b, a], D)) == ({0, 1}, 3)
    assert enumerate_normal_forms(normal_form([a, b, a], D), D) == ({(a, b, a)}, False)
    assert is_reduced_decomposition([ab, normal_form([a], D)], D)


def test_multiply_examples():
    G = load_fixture("z2xz2")
    g = nf("0:1 1:1", G)
    assert product_report(g, IDENTITY, G) == (g, True)
    assert product_report(nf("0:1", G), nf("0:1", G), G) == (IDENTITY, False)


def test_invert_and_support_trivia():
    assert invert(IDENTITY, D) == IDENTITY
    assert invert(NormalForm((a,)), D) == (a,)
    assert support_query(IDENTITY) == (set(), 0)
    G = load_fixture("z2xz2")
    assert support_query(nf("0:1 1:1", G)) == ({0, 1}, 2)


def test_enumerate_shuffles():
    G = load_fixture("z2xz2")
    assert enumerate_normal_forms(NormalForm((a,)), G)[0] == {(a,)}
    assert enumerate_normal_forms(nf("0:1 1:1", G), G)[0] == {(a, b), (b, a)}


def test_enumerate_cap():
    G = load_fixture("star3")
    g = nf("1:1 2:1 3:1 0:1", G)   # the leaves pairwise do not commute, only with 0
    words, overflow = enumerate_normal_forms(g, G, cap=2)
    assert overflow and len(words) == 2
    with pytest.raises(CapExceeded):
        enumerate_normal_forms_strict(g, G, cap=2)


def test_reduced_decomposition_trivia():
    g = nf("0:1 2:1", P3)
    assert is_reduced_decomposition([g, IDENTITY], P3)
    assert not is_reduced_decomposition([g, invert(g, P3)], P3)


def test_validation():
    with pytest.raises(VertexGroupMismatch):
        normal_form([(7, 1)], P3)
    with pytest.raises(VertexGroupMismatch):
        normal_form([(0, 0)], P3)   # identity index is not a syllable
    with pytest.raises(VertexGroupMismatch):
        normal_form([(0, 2)], P3)
    with pytest.raises(VertexGroupMismatch):
        parse_word("0-1", P3)


def test_parse_format():
    assert parse_word("e") == [] and parse_word("") == []
    assert format_word(IDENTITY) == "e"
    assert format_word(parse_word("1:1 0:1")) == "1:1 0:1"


def test_power():
    G = load_fixture("z3")
    g = nf("0:1", G)
    assert power(g, 3, G) == IDENTITY
    assert power(g, -1, G) == nf("0:2", G)
    assert power(nf("0:1 1:1", D), 3, D) == (a, b, a, b, a, b)


@pytest.mark.parametrize("n", range(0, 9))
def test_dihedral_oracle_all_words(n):
    # every word of length n over {a, b}: normal form letters = free reduction
    for mask in range(1 << n):
        w = [(mask >> i & 1, 1) for i in range(n)]
        g = normal_form(w, D)
        assert dihedral_letters(g) == dihedral_reduce(dihedral_letters(w))


@pytest.mark.parametrize("name", SMALL)
def test_rewriting_oracle_partition(name):
    """Canonical forms induce the same partition of short words as brute-force rewriting."""
    G = load_fixture(name)
    oracle = RewritingOracle(G)
    ours, theirs = {}, {}
    for w in all_words(G, 3):
        g = normal_form(w, G)
        k = oracle.key(w)
        assert len(g) == len(k)
        assert ours.setdefault(g, k) == k
        assert theirs.setdefault(k, g) == g
        assert tuple(g) in oracle.shortest_forms(w)


def words_for(G, max_len=10):
    gens = [(v, x) for v, grp in G.groups.items() for x in grp.nontrivial()]
    return st.lists(st.sampled_from(gens), max_size=max_len)


FIXTURES = {n: load_fixture(n) for n in ["path3", "square-free", "c4-z3", "mixed", "s3-edge", "s3-free", "star3"]}


@st.composite
def graph_and_word(draw, max_len=10):
    name = draw(st.sampled_from(sorted(FIXTURES)))
    G = FIXTURES[name]
    return G, draw(words_for(G, max_len))


@settings(max_examples=200, deadline=None)
@given(graph_and_word())
def test_round_trip(gw):
    G, w = gw
    g = normal_form(w, G)
    assert multiply(g, invert(g, G), G) == IDENTITY
    assert normal_form(g, G) == g
    assert is_geodesic(g, G)
    assert all(g[i][0] != g[i + 1][0] for i in range(len(g) - 1))


@settings(max_examples=100, deadline=None)
@given(graph_and_word(8))
def test_shuffles_confluent(gw):
    G, w = gw
    g = normal_form(w, G)
    sig = support_query(g)
    words, overflow = enumerate_normal_forms(g, G, cap=5000)
    assert not overflow
    assert min(words) == tuple(g)   # canonical = lexicographically least shuffle
    for m in words:
        assert normal_form(m, G) == g
        assert support_query(NormalForm(m)) == sig
        for i in range(len(m)):
            for j in range(i + 1, len(m) + 1):
                assert is_geodesic(m[i:j], G)


@settings(max_examples=150, deadline=None)
@given(graph_and_word(6), st.data())
def test_associative_and_inverse_antihomomorphism(gw, data):
    G, w = gw
    u = data.draw(words_for(G, 6))
    v = data.draw(words_for(G, 6))
    x, y, z = (normal_form(t, G) for t in (w, u, v))
    assert multiply(multiply(x, y, G), z, G) == multiply(x, multiply(y, z, G), G)
    assert invert(multiply(x, y, G), G) == multiply(invert(y, G), invert(x, G), G)
    assert normal_form(list(w) + list(u), G) == multiply(x, y, G)
