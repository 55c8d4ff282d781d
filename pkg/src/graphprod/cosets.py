"""Right-coset machinery for subgroups generated by vertex groups.

For a vertex set F, ``F𝒢`` is the subgroup generated by the groups on F and
``R_F`` is the set of elements none of whose normal forms starts with a
syllable on F.  Every element factors uniquely as ``g = p_F(g) r_F(g)`` with
``p_F(g)`` in F𝒢 and ``r_F(g)`` in R_F.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .defining_graph import DefiningGraph
from .errors import UnknownVertex
from .words import NormalForm, _canonical_order, invert, normal_form


def _vertex_set(F: Iterable[int], G: DefiningGraph) -> frozenset:
    F = frozenset(F)
    for v in F:
        if v not in G.groups:
            raise UnknownVertex(f"unknown vertex {v!r} in F")
    return F


def in_FG(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> bool:
    F = _vertex_set(F, G)
    return all(v in F for v, _ in g)


def in_RF(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> bool:
    """True iff no syllable on F can be shuffled to the front of ``g``."""
    F = _vertex_set(F, G)
    links = G.links
    for j, (v, _) in enumerate(g):
        if v in F and all(g[i][0] in links[v] for i in range(j)):
            return False
    return True


@dataclass(frozen=True)
class CosetDecomposition:
    F: frozenset
    p: NormalForm
    r: NormalForm


def decompose(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> CosetDecomposition:
    """The unique factorisation g = p r with p in F𝒢 and r in R_F."""
    F = _vertex_set(F, G)
    links = G.links
    rest = list(g)
    prefix = []
    while True:
        for j, (v, _) in enumerate(rest):
            if v in F and all(rest[i][0] in links[v] for i in range(j)):
                prefix.append(rest.pop(j))
                break
        else:
            break
    # both pieces are subwords of a shuffle of g, hence already reduced
    return CosetDecomposition(F, _canonical_order(prefix, G), _canonical_order(rest, G))


def p_F(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> NormalForm:
    return decompose(g, F, G).p


def r_F(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> NormalForm:
    return decompose(g, F, G).r


def left_coset_rep(g: NormalForm, F: Iterable[int], G: DefiningGraph) -> NormalForm:
    """Canonical representative of the left coset g·F𝒢 (constant on the coset)."""
    return invert(r_F(invert(g, G), F, G), G)


def subgroup_ball(F: Iterable[int], G: DefiningGraph, radius: int) -> list[NormalForm]:
    """All elements of F𝒢 of syllable length <= radius, in canonical order."""
    F = _vertex_set(F, G)
    gens = [(v, e) for v in sorted(F) for e in G.groups[v].nontrivial()]
    seen = {NormalForm()}
    frontier = [NormalForm()]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in gens:
                y = normal_form(list(x) + [s], G, validate=False)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda x: (len(x), x))
