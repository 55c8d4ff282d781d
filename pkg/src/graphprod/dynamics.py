"""Finite-radius dynamical experiments on the extension graph.

Nothing here classifies an element as parabolic or loxodromic; those are
statements about the boundary.  Reports give order bounds, fixed sets inside
a window and orbit traces, and say so in their header.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .defining_graph import DefiningGraph
from .errors import NotInLink, NotInStabilizer
from .extension import ExtensionGraph, ExtVertex, canonicalize_ext, ext_act, ext_stabilizer_test
from .graphs import ball_bfs, restricted_P_set
from .words import IDENTITY, NormalForm, multiply

REPORT_NOTE = ("finite-radius experiment: reports order bounds, fixed sets and orbit traces "
               "inside a window; no parabolic/loxodromic classification is made")


class OrderStatus(NamedTuple):
    kind: str  # "finite" or "exceeds_bound"
    n: int

    def __str__(self):
        return f"{self.kind}({self.n})"


def bounded_order(g: NormalForm, N: int, G: DefiningGraph) -> OrderStatus:
    """Least n <= N with g^n = 1, or ``exceeds_bound(N)``; never claims infinite order."""
    if N < 1:
        raise ValueError("order bound must be >= 1")
    acc = g
    for n in range(1, N + 1):
        if not acc:
            return OrderStatus("finite", n)
        acc = multiply(acc, g, G)
    return OrderStatus("exceeds_bound", N)


def fixed_ext_vertices(g: NormalForm, window: int, radius: int, G: DefiningGraph,
                       root: ExtVertex | int | None = None, cap: int = 50_000,
                       graph: ExtensionGraph | None = None) -> list[ExtVertex]:
    """Vertices x of the windowed radius-``radius`` ball about ``root`` with g.x = x."""
    if graph is None:
        graph = ExtensionGraph(G, window, root, cap=cap)
    ball = ball_bfs(graph, graph.origin, radius, cap)
    return [x for x in ball.vertices if ext_act(g, x, G) == x]


@dataclass
class OrbitStep:
    index: int
    element: NormalForm
    image: ExtVertex
    distinct: bool
    in_P: list[bool]


@dataclass
class WanderingTrace:
    v: int
    w: int
    window: int
    edge_sets: list[list[ExtVertex]]
    steps: list[OrbitStep] = field(default_factory=list)
    note: str = REPORT_NOTE

    @property
    def pairwise_distinct(self) -> bool:
        return all(s.distinct for s in self.steps)

    def eventually_in_P(self) -> list[int | None]:
        """For each edge set: first index from which every image lies in P(v, I)."""
        out = []
        for k in range(len(self.edge_sets)):
            start = None
            for s in self.steps:
                if s.in_P[k]:
                    start = s.index if start is None else start
                else:
                    start = None
            out.append(start)
        return out


class _InducedExt:
    vertex_transitive = False
    key = staticmethod(ExtensionGraph.key)

    def __init__(self, ext: ExtensionGraph, vertices: list[ExtVertex]):
        self.ext = ext
        self.origin = ext.origin
        self.vertices = vertices

    def neighbors(self, x: ExtVertex) -> tuple:
        return tuple(y for y in self.vertices if self.ext.adjacent(x, y))


def wandering_orbit_experiment(v: int, w: int, seq: Sequence[NormalForm], G: DefiningGraph,
                               edge_sets: Iterable[Iterable[ExtVertex]] = (),
                               window: int | None = None, cap: int = 50_000) -> WanderingTrace:
    """Track g_n.w for stabiliser elements g_n of v.

    For each finite set I of edges at v (given by their far endpoints), record
    whether g_n.w lies in P(v, I) inside the window; this is the desk-scale
    signature of g_n.w converging to v.
    """
    G.check_vertex(v)
    G.check_vertex(w)
    if w not in G.links[v]:
        raise NotInLink(f"vertex {w} is not adjacent to {v}")
    seq = [NormalForm(g) for g in seq]
    for g in seq:
        if not ext_stabilizer_test(g, v, G):
            raise NotInStabilizer(f"{g!r} does not fix the conjugate of G_{v}")
    root = ExtVertex(v, IDENTITY)
    target = ExtVertex(w, IDENTITY)
    images = [ext_act(g, target, G) for g in seq]
    if window is None:
        window = max((len(x.conjugator) for x in images), default=0)
    sets = [sorted({canonicalize_ext(y.base, y.conjugator, G) for y in I}, key=ExtensionGraph.key)
            for I in edge_sets]
    trace = WanderingTrace(v, w, window, sets)
    # P(v, I) at radius 1 only sees the star of v, so the induced subgraph on
    # v, the images and the ends of I gives the same answer as the full window
    ext = ExtensionGraph(G, window, root, cap=cap)
    local = sorted({y for y in (root, *images, *(y for I in sets for y in I)) if ext.in_window(y)},
                   key=ExtensionGraph.key)
    graph = _InducedExt(ext, local)
    p_sets = [set(restricted_P_set(graph, root, [(root, y) for y in I], 1, cap)) for I in sets]
    seen = set()
    for n, (g, img) in enumerate(zip(seq, images)):
        trace.steps.append(OrbitStep(n, g, img, img not in seen, [img in P for P in p_sets]))
        seen.add(img)
    return trace
