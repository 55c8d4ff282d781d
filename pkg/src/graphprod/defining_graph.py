"""The simplicial defining graph with a finite group attached to every vertex."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DuplicateEdge, InvalidInput, LoopEdge, TrivialVertexGroup, UnknownVertex
from .graphs import FiniteGraph, UnknownGirth, diameter, girth, shortest_path_lengths, to_dot
from .groups import GroupTable, build_group

VertexId = int


class DefiningGraph:
    """Finite simple graph Gamma plus vertex groups ``G_v``.

    Vertex ids are integers; their natural order is the order used for
    canonical normal forms.
    """

    def __init__(self, groups: Mapping[VertexId, GroupTable], edges: Iterable[tuple[int, int]], name: str = ""):
        self.name = name
        self.groups: dict[VertexId, GroupTable] = dict(sorted(groups.items()))
        self.vertices: tuple[VertexId, ...] = tuple(self.groups)
        for v, grp in self.groups.items():
            if grp.order < 2:
                raise TrivialVertexGroup(f"vertex {v} carries the trivial group")
        links: dict[VertexId, set] = {v: set() for v in self.vertices}
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise InvalidInput(f"edge {e!r} must have two endpoints")
            u, v = e
            for x in (u, v):
                if x not in links:
                    raise UnknownVertex(f"edge {e!r} mentions unknown vertex {x!r}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"edge {key} listed twice")
            seen.add(key)
            links[u].add(v)
            links[v].add(u)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.links: dict[VertexId, frozenset] = {v: frozenset(ns) for v, ns in links.items()}
        self.stars: dict[VertexId, frozenset] = {v: ns | {v} for v, ns in self.links.items()}

    def __repr__(self):
        return f"DefiningGraph({self.name or len(self.vertices)}: V={list(self.vertices)}, E={list(self.edges)})"

    def __eq__(self, other):
        return (isinstance(other, DefiningGraph) and self.groups == other.groups
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def check_vertex(self, v) -> VertexId:
        if v not in self.groups:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return v

    def adjacent(self, u: VertexId, v: VertexId) -> bool:
        return v in self.links[u]

    def link(self, v: VertexId) -> frozenset:
        return self.links[self.check_vertex(v)]

    def star(self, v: VertexId) -> frozenset:
        return self.stars[self.check_vertex(v)]

    def elink(self, v: VertexId) -> frozenset:
        return frozenset((v, w) for w in self.link(v))

    def is_leaf(self, v: VertexId) -> bool:
        return len(self.link(v)) <= 1

    def leaves(self) -> frozenset:
        return frozenset(v for v in self.vertices if len(self.links[v]) <= 1)

    @cached_property
    def as_graph(self) -> FiniteGraph:
        return FiniteGraph({v: self.links[v] for v in self.vertices})

    @cached_property
    def girth(self):
        if not self.vertices:
            return math.inf
        g = girth(self.as_graph, max(1, len(self.vertices)))
        assert not isinstance(g, UnknownGirth)
        return g

    @cached_property
    def distances(self) -> dict:
        return shortest_path_lengths(self.as_graph)

    def distance(self, u: VertexId, v: VertexId) -> float:
        return self.distances[u].get(v, math.inf)

    def distance_between_sets(self, a: Iterable, b: Iterable) -> float:
        return min((self.distance(u, v) for u in a for v in b), default=math.inf)

    @property
    def max_group_order(self) -> int:
        return max(g.order for g in self.groups.values())

    def to_doc(self) -> dict:
        return {
            "vertices": [{"id": v, "group": g.to_spec()} for v, g in self.groups.items()],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        leaves = self.leaves()
        return to_dot(
            self.as_graph, self.vertices, name="Gamma",
            label=lambda v: f"{v}:{self.groups[v].label or self.groups[v].order}",
            color=lambda v: "gray" if v in leaves else "black",
        )


def neighborhood_query(G: DefiningGraph, v: VertexId, mode: str):
    if mode == "link":
        return G.link(v)
    if mode == "star":
        return G.star(v)
    if mode == "elink":
        return G.elink(v)
    if mode == "is_leaf":
        return G.is_leaf(v)
    raise ValueError(f"unknown mode {mode!r}")


def load_graph(doc: Mapping | str | Path, name: str = "") -> DefiningGraph:
    """Build a :class:`DefiningGraph` from a GraphDoc mapping or a JSON file path."""
    if isinstance(doc, (str, Path)):
        path = Path(doc)
        with path.open() as fh:
            doc = json.load(fh)
        name = name or path.stem
    try:
        vertices = doc["vertices"]
        edges = doc.get("edges", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidInput(f"malformed graph document: {exc}") from None
    groups = {}
    for entry in vertices:
        vid = entry["id"]
        if not isinstance(vid, int) or isinstance(vid, bool) or vid < 0:
            raise InvalidInput(f"vertex id must be a non-negative integer, got {vid!r}")
        if vid in groups:
            raise InvalidInput(f"vertex {vid} listed twice")
        groups[vid] = build_group(entry.get("group", {"type": "cyclic", "n": 2}))
    return DefiningGraph(groups, [tuple(e) for e in edges], name=name or doc.get("name", ""))


def graph_summary(G: DefiningGraph) -> dict:
    g = G.girth
    return {
        "vertices": len(G.vertices),
        "edges": len(G.edges),
        "girth": g,
        "girth_gt_4": g > 4,
        "girth_gt_20": g > 20,
    }


@dataclass
class PredicateReport:
    leaves: frozenset
    non_leaves: frozenset
    non_leaf_count: int
    link_non_leaf: dict
    diameter: float
    diam_gt_1: bool
    diam_gt_2: bool


def finiteness_predicates(G: DefiningGraph) -> PredicateReport:
    leaves = G.leaves()
    non_leaves = frozenset(G.vertices) - leaves
    diam = diameter(G.as_graph) if G.vertices else 0
    return PredicateReport(
        leaves=leaves,
        non_leaves=non_leaves,
        non_leaf_count=len(non_leaves),
        link_non_leaf={v: len(G.links[v] - leaves) for v in G.vertices},
        diameter=diam,
        diam_gt_1=diam > 1,
        diam_gt_2=diam > 2,
    )
