"""Semidirect product of a graph product with a finite group of graph symmetries.

The acting group is given concretely as a named list of permutations of the
vertex ids, closed under composition and inverses.  A permutation g acts on
the graph product by relabelling syllables (v, x) -> (g(v), x); this needs
G_v and G_{g(v)} to be the same table.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, NamedTuple

from .cayley import CayleyGraph
from .defining_graph import DefiningGraph
from .errors import ActionInvalid, ActionMismatch
from .words import IDENTITY, NormalForm, invert, multiply, normal_form


class GraphAction:
    def __init__(self, perms: Mapping[str, tuple[int, ...]], G: DefiningGraph):
        self.G = G
        n = len(G.vertices)
        if tuple(G.vertices) != tuple(range(n)):
            raise ActionInvalid("actions need vertex ids 0..n-1")
        self.perms: dict[str, tuple[int, ...]] = {}
        self._by_map: dict[tuple, str] = {}
        for name, mp in perms.items():
            mp = tuple(mp)
            if sorted(mp) != list(range(n)):
                raise ActionInvalid(f"{name}: {list(mp)} is not a permutation of 0..{n - 1}")
            for u, v in G.edges:
                if not G.adjacent(mp[u], mp[v]):
                    raise ActionInvalid(f"{name} does not preserve edge ({u}, {v})")
            for v in G.vertices:
                if G.groups[v] != G.groups[mp[v]]:
                    raise ActionInvalid(f"{name} maps vertex {v} to {mp[v]} with a different group")
            if mp in self._by_map:
                raise ActionInvalid(f"{name} duplicates {self._by_map[mp]}")
            self.perms[name] = mp
            self._by_map[mp] = name
        ident = tuple(range(n))
        if ident not in self._by_map:
            raise ActionInvalid("the identity permutation is missing")
        self.identity = self._by_map[ident]
        for a in self.perms:
            inv = self._by_map.get(self._inverse_map(a))
            if inv is None:
                raise ActionInvalid(f"inverse of {a} is missing")
            for b in self.perms:
                if self._compose_map(a, b) not in self._by_map:
                    raise ActionInvalid(f"composition {a}∘{b} is missing")

    def _compose_map(self, a: str, b: str) -> tuple:
        pa, pb = self.perms[a], self.perms[b]
        return tuple(pa[pb[v]] for v in range(len(pa)))

    def _inverse_map(self, a: str) -> tuple:
        pa = self.perms[a]
        out = [0] * len(pa)
        for v, w in enumerate(pa):
            out[w] = v
        return tuple(out)

    def compose(self, a: str, b: str) -> str:
        """Name of a∘b (apply b first)."""
        return self._by_map[self._compose_map(a, b)]

    def inverse(self, a: str) -> str:
        return self._by_map[self._inverse_map(a)]

    def fixes(self, a: str, v: int) -> bool:
        return self.perms[a][v] == v

    def names(self) -> list[str]:
        return list(self.perms)

    def to_doc(self) -> dict:
        return {"perms": [{"name": k, "map": list(v)} for k, v in self.perms.items()]}


def load_action(doc: Mapping | str | Path, G: DefiningGraph) -> GraphAction:
    if isinstance(doc, (str, Path)):
        with open(doc) as fh:
            doc = json.load(fh)
    try:
        perms = {p["name"]: tuple(p["map"]) for p in doc["perms"]}
    except (KeyError, TypeError) as exc:
        raise ActionInvalid(f"malformed action document: {exc}") from None
    return GraphAction(perms, G)


def apply_automorphism(action: GraphAction, g: str, w) -> NormalForm:
    if g not in action.perms:
        raise ActionInvalid(f"unknown permutation {g!r}")
    mp = action.perms[g]
    return normal_form([(mp[v], x) for v, x in w], action.G, validate=False)


class WreathElem(NamedTuple):
    word: NormalForm
    actor: str


def wreath_identity(action: GraphAction) -> WreathElem:
    return WreathElem(IDENTITY, action.identity)


def _check(action: GraphAction, x: WreathElem):
    if x.actor not in action.perms:
        raise ActionMismatch(f"{x.actor!r} is not a permutation of this action")


def wreath_mul(action: GraphAction, x: WreathElem, y: WreathElem) -> WreathElem:
    """(w1, g1)(w2, g2) = (w1 α_g1(w2), g1 g2)."""
    _check(action, x)
    _check(action, y)
    w = multiply(x.word, apply_automorphism(action, x.actor, y.word), action.G)
    return WreathElem(w, action.compose(x.actor, y.actor))


def wreath_inverse(action: GraphAction, x: WreathElem) -> WreathElem:
    _check(action, x)
    gi = action.inverse(x.actor)
    return WreathElem(apply_automorphism(action, gi, invert(x.word, action.G)), gi)


def conjugation_action_on_cayley(action: GraphAction, x: WreathElem, v: NormalForm) -> NormalForm:
    """(w, g) . v = w α_g(v): an automorphism of the Cayley graph."""
    _check(action, x)
    return multiply(x.word, apply_automorphism(action, x.actor, v), action.G)


def wreath_stabilizer_probe(action: GraphAction, v: int, g_elem: int) -> dict:
    """Permutations fixing both 1 and the Cayley vertex (v, g_elem), compared with Stab(v)."""
    G = action.G
    G.check_vertex(v)
    if not 0 < g_elem < G.groups[v].order:
        raise ActionInvalid(f"element {g_elem} is not a nontrivial element of G_{v}")
    X = CayleyGraph(G)
    point = NormalForm(((v, g_elem),))
    fixing = []
    for name in action.names():
        x = WreathElem(IDENTITY, name)
        if (conjugation_action_on_cayley(action, x, X.origin) == X.origin
                and conjugation_action_on_cayley(action, x, point) == point):
            fixing.append(name)
    vertex_stab = [name for name in action.names() if action.fixes(name, v)]
    return {
        "vertex": v,
        "element": g_elem,
        "stabilizer": fixing,
        "vertex_stabilizer": vertex_stab,
        "equal": sorted(fixing) == sorted(vertex_stab),
        "finite": True,
    }
