"""Windowed extension graph.

A vertex g G_v g^-1 is stored as ``ExtVertex(v, rho)`` where ``rho`` is the
canonical representative of the left coset g·St𝒢(v), St𝒢(v) being the
subgroup generated by the groups on the closed star of v (the stabiliser of
G_v under conjugation).  Two conjugates are adjacent when they are distinct
and commute elementwise.

Links in the extension graph are usually infinite, so exploration is always
restricted to conjugators of syllable length <= L (the window).  Answers
inside the window are exact; nothing is claimed about what lies outside it.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .cayley import CayleyGraph
from .cosets import left_coset_rep
from .defining_graph import DefiningGraph
from .errors import CapExceeded
from .graphs import ball_bfs, to_dot
from .words import IDENTITY, NormalForm, conjugate, format_word, multiply, normal_form


class ExtVertex(NamedTuple):
    base: int
    conjugator: NormalForm

    def __repr__(self):
        return f"Ext({self.base}, {format_word(self.conjugator)})"


def canonicalize_ext(v: int, g, G: DefiningGraph) -> ExtVertex:
    G.check_vertex(v)
    if not isinstance(g, NormalForm):
        g = normal_form(g, G)
    return ExtVertex(v, left_coset_rep(g, G.stars[v], G))


def ext_equal_and_vmap(x: ExtVertex, y: ExtVertex) -> tuple[bool, int]:
    return x == y, x.base


def _conjugates(x: ExtVertex, G: DefiningGraph) -> list[NormalForm]:
    return [conjugate(x.conjugator, NormalForm(((x.base, a),)), G) for a in G.groups[x.base].nontrivial()]


def ext_adjacent(x: ExtVertex, y: ExtVertex, G: DefiningGraph) -> bool:
    """Distinct conjugates that commute elementwise."""
    if x == y:
        return False
    for A in _conjugates(x, G):
        for B in _conjugates(y, G):
            if multiply(A, B, G) != multiply(B, A, G):
                return False
    return True


def ext_act(g: NormalForm, x: ExtVertex, G: DefiningGraph) -> ExtVertex:
    """g.x = g x g^-1."""
    return canonicalize_ext(x.base, multiply(g, x.conjugator, G), G)


def ext_stabilizer_test(g: NormalForm, v: int, G: DefiningGraph) -> bool:
    root = ExtVertex(v, IDENTITY)
    return ext_act(g, root, G) == root


class ExtensionGraph:
    """Induced subgraph of the extension graph on conjugators of length <= window."""

    vertex_transitive = False

    def __init__(self, G: DefiningGraph, window: int, root: ExtVertex | int | None = None,
                 cap: int = 50_000):
        if window < 0:
            raise ValueError("window must be >= 0")
        self.G = G
        self.window = window
        self.cap = cap
        if root is None:
            root = G.vertices[0]
        if isinstance(root, int):
            root = ExtVertex(root, IDENTITY)
        self.origin = root
        self._cayley = CayleyGraph(G)
        self._vertices = None
        self._conj_cache: dict = {}
        self._neighbors = lru_cache(maxsize=None)(self._compute_neighbors)

    @staticmethod
    def key(x: ExtVertex):
        return (len(x.conjugator), x.base, tuple(x.conjugator))

    @property
    def vertices(self) -> list[ExtVertex]:
        if self._vertices is None:
            ball = ball_bfs(self._cayley, IDENTITY, self.window, self.cap)
            if ball.budget_exhausted:
                raise CapExceeded(f"window {self.window} needs more than {self.cap} conjugators")
            found = {canonicalize_ext(v, g, self.G) for g in ball.vertices for v in self.G.vertices}
            if len(found) > self.cap:
                raise CapExceeded(f"window {self.window} has more than {self.cap} vertices")
            self._vertices = sorted(found, key=self.key)
        return self._vertices

    def conjugates(self, x: ExtVertex) -> list[NormalForm]:
        c = self._conj_cache.get(x)
        if c is None:
            c = self._conj_cache[x] = _conjugates(x, self.G)
        return c

    def adjacent(self, x: ExtVertex, y: ExtVertex) -> bool:
        if x == y:
            return False
        G = self.G
        return all(multiply(A, B, G) == multiply(B, A, G)
                   for A in self.conjugates(x) for B in self.conjugates(y))

    def _compute_neighbors(self, x: ExtVertex) -> tuple:
        return tuple(y for y in self.vertices if self.adjacent(x, y))

    def neighbors(self, x: ExtVertex) -> tuple:
        return self._neighbors(x)

    def in_window(self, x: ExtVertex) -> bool:
        return len(x.conjugator) <= self.window

    def to_dot(self, vertices) -> str:
        palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan"]
        return to_dot(
            self, vertices, name="ExtBall",
            label=lambda x: f"{x.base}|{format_word(x.conjugator)}",
            color=lambda x: palette[self.G.vertices.index(x.base) % len(palette)],
        )


def ext_neighbors_windowed(x: ExtVertex, L: int, G: DefiningGraph, cap: int = 50_000,
                           graph: ExtensionGraph | None = None) -> list[ExtVertex]:
    """Neighbours of x among the conjugates with conjugator length <= L."""
    if graph is None or graph.window != L or graph.G is not G:
        graph = ExtensionGraph(G, L, cap=cap)
    return list(graph.neighbors(x))


def stabilizer_coset_member(h: NormalForm, v: int, G: DefiningGraph) -> bool:
    """Is h in St𝒢(v)?"""
    st = G.stars[v]
    return all(u in st for u, _ in h)

