"""Finite-radius algorithms over implicitly given graphs.

Every routine here works against the small :class:`ExplorableGraph` protocol:
an ``origin``, a ``key`` giving a sortable canonical encoding of a vertex and
``neighbors``.  Graphs may be infinite, so every search takes an explicit
budget and reports truncation instead of failing.

Vertices must be hashable and compare equal exactly when they are the same
vertex (canonical encodings); ``key`` is only used to make output order
deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Protocol, Sequence

import numpy as np

from .errors import CapExceeded, Unreachable

Vertex = Hashable
Edge = tuple[Vertex, Vertex]

DEFAULT_CAP = 200_000


class ExplorableGraph(Protocol):
    origin: Vertex

    def key(self, x: Vertex) -> Any: ...

    def neighbors(self, x: Vertex) -> Sequence[Vertex]: ...


class FiniteGraph:
    """An explicit finite simple graph given by adjacency lists."""

    vertex_transitive = False

    def __init__(self, adjacency: Mapping[Vertex, Iterable[Vertex]], origin: Vertex | None = None):
        adj: dict[Vertex, set] = {v: set() for v in adjacency}
        for v, nbrs in adjacency.items():
            for w in nbrs:
                if w == v:
                    raise ValueError(f"loop at {v!r}")
                adj[v].add(w)
                adj.setdefault(w, set()).add(v)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self.vertices = tuple(sorted(self._adj))
        self.origin = self.vertices[0] if origin is None and self.vertices else origin

    @classmethod
    def from_edges(cls, vertices: Iterable[Vertex], edges: Iterable[Edge], origin=None) -> "FiniteGraph":
        adj: dict[Vertex, list] = {v: [] for v in vertices}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return cls(adj, origin)

    def key(self, x):
        return x

    def neighbors(self, x):
        return self._adj[x]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in self.vertices for v in self._adj[u] if u < v]

    def __len__(self):
        return len(self.vertices)


def _sorted(graph, xs: Iterable[Vertex]) -> list:
    return sorted(xs, key=graph.key)


def edge_key(graph, u, v) -> tuple:
    a, b = graph.key(u), graph.key(v)
    return (a, b) if a <= b else (b, a)


# ---------------------------------------------------------------------------
# balls

@dataclass
class BallReport:
    center: Vertex
    radius: int
    spheres: list[list[Vertex]]
    distance: dict[Vertex, int]
    edge_count: int
    budget_exhausted: bool
    cap: int
    # the BFS ran out of new vertices: the whole component is inside the ball
    component_complete: bool = False

    @property
    def sphere_sizes(self) -> list[int]:
        return [len(s) for s in self.spheres]

    @property
    def vertices(self) -> list[Vertex]:
        return [x for s in self.spheres for x in s]

    def __len__(self):
        return len(self.distance)


def _bfs(graph, center, radius: int, cap: int):
    dist = {center: 0}
    spheres = [[center]]
    exhausted = False
    complete = False
    frontier = [center]
    for k in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in graph.neighbors(x):
                if y not in dist:
                    if len(dist) >= cap:
                        exhausted = True
                        break
                    dist[y] = k
                    nxt.append(y)
            if exhausted:
                break
        if not nxt and not exhausted:
            complete = True
            break
        spheres.append(_sorted(graph, nxt))
        frontier = spheres[-1]
        if exhausted:
            break
    if not complete and not exhausted and len(spheres) == radius + 1:
        # one more look decides whether the component ends exactly here
        complete = all(y in dist for x in frontier for y in graph.neighbors(x))
    return dist, spheres, exhausted, complete


def ball_bfs(graph: ExplorableGraph, center=None, radius: int = 1, cap: int = DEFAULT_CAP) -> BallReport:
    """Exact spheres about ``center`` up to ``radius`` (or until ``cap`` vertices)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    center = graph.origin if center is None else center
    dist, spheres, exhausted, complete = _bfs(graph, center, radius, cap)
    twice = sum(1 for x in dist for y in graph.neighbors(x) if y in dist)
    return BallReport(center, radius, spheres, dist, twice // 2, exhausted, cap, complete)


def _bfs_until(graph, a, b, cap: int) -> dict:
    """Distances from ``a`` for every vertex up to and including the sphere of ``b``."""
    dist = {a: 0}
    if a == b:
        return dist
    frontier = [a]
    k = 0
    while frontier:
        k += 1
        nxt = []
        for x in frontier:
            for y in graph.neighbors(x):
                if y not in dist:
                    if len(dist) >= cap:
                        raise CapExceeded(f"more than {cap} vertices explored before reaching target")
                    dist[y] = k
                    nxt.append(y)
        if b in dist:
            return dist
        frontier = nxt
    raise Unreachable(f"{b!r} is not reachable from {a!r}")


def distance(graph, x, y, cap: int = DEFAULT_CAP) -> int:
    fast = getattr(graph, "distance", None)
    if fast is not None:
        return fast(x, y)
    return _bfs_until(graph, x, y, cap)[y]


# ---------------------------------------------------------------------------
# geodesics

@dataclass
class GeodesicSet:
    paths: list[tuple]
    truncated: bool
    length: int


def _iter_geodesics(graph, dist: Mapping, b) -> Iterator[tuple]:
    """All geodesics from the BFS source of ``dist`` to ``b`` (walked backwards)."""
    stack = [(b, (b,))]
    while stack:
        x, suffix = stack.pop()
        k = dist[x]
        if k == 0:
            yield suffix
            continue
        preds = [y for y in graph.neighbors(x) if dist.get(y) == k - 1]
        for y in reversed(_sorted(graph, preds)):
            stack.append((y, (y,) + suffix))


def geodesics(graph: ExplorableGraph, a, b, cap: int = 10_000, vertex_cap: int = DEFAULT_CAP,
              dist: Mapping | None = None) -> GeodesicSet:
    """Every geodesic path from ``a`` to ``b``; at most ``cap`` of them."""
    if dist is None:
        dist = _bfs_until(graph, a, b, vertex_cap)
    elif b not in dist:
        raise Unreachable(f"{b!r} outside the supplied distance map")
    paths = []
    truncated = False
    for p in _iter_geodesics(graph, dist, b):
        if len(paths) >= cap:
            truncated = True
            break
        paths.append(p)
    return GeodesicSet(paths, truncated, dist[b])


# ---------------------------------------------------------------------------
# girth and circuits

class UnknownGirth:
    """Girth not determined: no circuit of length <= ``bound`` through the explored vertices."""

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, UnknownGirth) and other.bound == self.bound

    def __repr__(self):
        return f"unknown(>{self.bound})"

    __str__ = __repr__


def _shortest_circuit_through(graph, root, depth: int) -> int | None:
    dist = {root: 0}
    branch = {root: None}
    frontier = [root]
    best = None
    for k in range(1, depth + 1):
        nxt = []
        for x in frontier:
            for y in graph.neighbors(x):
                if y not in dist:
                    dist[y] = k
                    branch[y] = y if k == 1 else branch[x]
                    nxt.append(y)
        frontier = nxt
        if not frontier:
            break
    for x, dx in dist.items():
        if x == root:
            continue
        for y in graph.neighbors(x):
            if y == root or y not in dist or branch[y] == branch[x]:
                continue
            c = dx + dist[y] + 1
            if best is None or c < best:
                best = c
    return best


def girth(graph: ExplorableGraph, search_radius: int, cap: int = DEFAULT_CAP):
    """Length of the shortest circuit through an explored vertex.

    Returns an ``int``, ``math.inf`` when the graph is finite, fully explored
    and acyclic, or :class:`UnknownGirth` when the budget was too small to
    decide.  Vertex-transitive graphs are only searched from the origin.
    """
    ball = ball_bfs(graph, graph.origin, search_radius, cap)
    if getattr(graph, "vertex_transitive", False):
        roots = [graph.origin]
    else:
        roots = ball.vertices
    best = None
    for r in roots:
        c = _shortest_circuit_through(graph, r, search_radius)
        if c is not None and (best is None or c < best):
            best = c
    finite = getattr(graph, "vertices", None)
    if ball.component_complete and finite is not None:
        # finite graph: cover the remaining components as well
        for r in (v for v in finite if v not in ball.distance):
            c = _shortest_circuit_through(graph, r, len(finite))
            if c is not None and (best is None or c < best):
                best = c
    if best is not None:
        return best
    if ball.component_complete:
        return math.inf
    return UnknownGirth(2 * search_radius + 1)


def canonical_circuit(graph, cycle: Sequence[Vertex]) -> tuple:
    """Canonical key of a circuit up to rotation and reversal."""
    keys = [graph.key(x) for x in cycle]
    n = len(keys)
    best = None
    for seq in (keys, keys[::-1]):
        for i in range(n):
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
    return best


@dataclass
class CircuitReport:
    edge: Edge
    n: int
    circuits: list[tuple]
    count: int
    based_count: int
    truncated: bool
    cap: int
    by_length: dict[int, int] = field(default_factory=dict)


def circuits_through_edge(graph: ExplorableGraph, e: Edge, n: int, cap: int = 100_000) -> CircuitReport:
    """All circuits of length ``<= n`` containing the edge ``e``.

    Circuits are counted as cyclic subgraphs (up to rotation and reversal);
    ``based_count`` is the number of based, oriented vertex sequences.
    """
    if n < 3:
        raise ValueError("circuits have length >= 3")
    x, y = e
    fast = getattr(graph, "distance", None)
    if fast is not None:
        def dist_to_x(z, _x=x):
            return fast(z, _x)
    else:
        dmap, _, _, _ = _bfs(graph, x, n - 2, DEFAULT_CAP)

        def dist_to_x(z):
            return dmap.get(z, n)

    found = []
    truncated = False
    path = [x, y]
    on_path = {x, y}

    def extend():
        nonlocal truncated
        last = path[-1]
        for z in graph.neighbors(last):
            if truncated:
                return
            if z == x:
                if len(path) >= 3:
                    if len(found) >= cap:
                        truncated = True
                        return
                    found.append(tuple(path))
                continue
            if z in on_path:
                continue
            # edges used after stepping to z, plus the way back to x
            if len(path) + dist_to_x(z) > n:
                continue
            path.append(z)
            on_path.add(z)
            extend()
            path.pop()
            on_path.discard(z)

    if y in graph.neighbors(x):
        extend()
    by_length: dict[int, int] = {}
    for c in found:
        by_length[len(c)] = by_length.get(len(c), 0) + 1
    circuits = sorted(canonical_circuit(graph, c) for c in found)
    return CircuitReport(
        edge=e, n=n, circuits=circuits, count=len(circuits),
        based_count=sum(2 * len(c) for c in circuits), truncated=truncated, cap=cap,
        by_length=dict(sorted(by_length.items())),
    )


@dataclass
class FinenessReport:
    n_max: int
    counts: dict[Any, dict[int, int]]
    f: dict[int, int]
    truncated: bool


def fineness_probe(graph: ExplorableGraph, edges: Iterable[Edge], n_max: int, cap: int = 100_000) -> FinenessReport:
    """|C(e, n)| for each sampled edge and each 3 <= n <= n_max, plus the max over edges."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    counts = {}
    truncated = False
    for e in edges:
        rep = circuits_through_edge(graph, e, n_max, cap)
        truncated |= rep.truncated
        cum, running = {}, 0
        for n in range(3, n_max + 1):
            running += rep.by_length.get(n, 0)
            cum[n] = running
        counts[edge_key(graph, *e)] = cum
    f = {n: max((c[n] for c in counts.values()), default=0) for n in range(3, n_max + 1)}
    return FinenessReport(n_max, counts, f, truncated)


# ---------------------------------------------------------------------------
# hyperbolicity probes

def gromov_product(graph: ExplorableGraph, x, y, z, cap: int = DEFAULT_CAP) -> float:
    """(x, y)_z as a half-integer."""
    return (distance(graph, x, z, cap) + distance(graph, y, z, cap) - distance(graph, x, y, cap)) / 2


class _Neighbourhoods:
    """Cached closed balls N(x, r) used for the path-inclusion checks."""

    def __init__(self, graph, cap):
        self.graph = graph
        self.cap = cap
        self.fast = getattr(graph, "distance", None)
        self._balls: dict = {}

    def within(self, x, y, r: int) -> bool:
        if self.fast is not None:
            return self.fast(x, y) <= r
        b = self._balls.get((x, r))
        if b is None:
            b = _bfs(self.graph, x, r, self.cap)[0]
            self._balls[(x, r)] = b
        return y in b

    def deviation(self, p: Sequence, q: Sequence, limit: int) -> int:
        """Least r <= limit with every vertex of p within r of q (limit + 1 if none)."""
        worst = 0
        for u in p:
            r = worst
            while r <= limit and not any(self.within(u, w, r) for w in q):
                r += 1
            worst = r
            if worst > limit:
                break
        return worst


@dataclass
class BigonReport:
    passed: bool
    delta: int
    radius: int
    witness: dict | None
    star_witness: dict | None
    bigons_checked: int
    max_deviation: int
    truncated: bool


def bigon_check(graph: ExplorableGraph, radius: int, delta: int, cap: int = DEFAULT_CAP,
                geodesic_cap: int = 2_000, sources: Iterable | None = None,
                interior_constant: int = 2) -> BigonReport:
    """Thin-bigon test on the ball of ``radius``.

    For every source ``a``, every ``b`` in the ball and every ``c`` with
    d(b, c) <= 1 and d(a, b) = d(a, c), each geodesic from a to b must lie in
    the ``delta``-neighbourhood of each geodesic from a to c and vice versa
    (checked on vertices).  Bigons with equal endpoints must additionally
    satisfy the interior condition: interior vertices of one geodesic are
    within ``interior_constant`` of the interior of the other.

    Vertex-transitive graphs are only checked from the origin.
    """
    if sources is None:
        if getattr(graph, "vertex_transitive", False):
            sources = [graph.origin]
        else:
            sources = ball_bfs(graph, graph.origin, radius, cap).vertices
    nb = _Neighbourhoods(graph, cap)
    witness = star_witness = None
    checked = 0
    max_dev = 0
    truncated = False
    limit = max(delta, interior_constant) + 2 * radius
    for a in _sorted(graph, sources):
        ball = ball_bfs(graph, a, radius, cap)
        truncated |= ball.budget_exhausted
        dist = ball.distance
        geos: dict = {}

        def geo(b):
            if b not in geos:
                geos[b] = geodesics(graph, a, b, cap=geodesic_cap, dist=dist)
            return geos[b].paths

        for b in ball.vertices:
            db = dist[b]
            partners = [b] + [c for c in graph.neighbors(b) if dist.get(c) == db]
            for c in partners:
                if graph.key(c) < graph.key(b):
                    continue
                for p in geo(b):
                    for q in geo(c):
                        checked += 1
                        dev = max(nb.deviation(p, q, limit), nb.deviation(q, p, limit))
                        max_dev = max(max_dev, dev)
                        if dev > delta and witness is None:
                            witness = {"a": a, "b": b, "c": c, "p": p, "q": q, "deviation": dev}
                        if c == b and star_witness is None:
                            pi, qi = p[1:-1], q[1:-1]
                            if (nb.deviation(pi, qi, interior_constant) > interior_constant
                                    or nb.deviation(qi, pi, interior_constant) > interior_constant):
                                star_witness = {"a": a, "b": b, "p": p, "q": q}
        truncated |= any(g.truncated for g in geos.values())
    return BigonReport(
        passed=witness is None and star_witness is None, delta=delta, radius=radius,
        witness=witness, star_witness=star_witness, bigons_checked=checked,
        max_deviation=max_dev, truncated=truncated,
    )


@dataclass
class DeltaEstimate:
    delta_four_point: float
    radius_tested: int
    exhaustive: bool
    delta_bigon: int | None = None
    witness: tuple | None = None
    quadruples: int = 0


def distance_matrix(graph, verts: Sequence, cap: int = DEFAULT_CAP) -> np.ndarray:
    n = len(verts)
    D = np.zeros((n, n), dtype=np.int32)
    fast = getattr(graph, "distance", None)
    for i, x in enumerate(verts):
        if fast is not None:
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = fast(x, verts[j])
        else:
            remaining = set(verts[i + 1:])
            dist = {x: 0}
            frontier = [x]
            k = 0
            while remaining and frontier:
                k += 1
                nxt = []
                for u in frontier:
                    for w in graph.neighbors(u):
                        if w not in dist:
                            if len(dist) >= cap:
                                raise CapExceeded("distance matrix BFS over budget")
                            dist[w] = k
                            nxt.append(w)
                            remaining.discard(w)
                frontier = nxt
            if remaining:
                raise Unreachable("ball is not connected")
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = dist[verts[j]]
    return D


def _four_point_exhaustive(D: np.ndarray) -> tuple[int, tuple | None]:
    """max over quadruples of (largest pair-sum - middle pair-sum), and a witness."""
    n = D.shape[0]
    best, wit = 0, None
    for i in range(n):
        for j in range(i + 1, n):
            s1 = D[i, j] + D
            s2 = D[i][:, None] + D[j][None, :]
            s3 = s2.T
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            val = hi - (s1 + s2 + s3 - hi - lo)
            m = int(val.max())
            if m > best:
                k, l = np.unravel_index(int(val.argmax()), val.shape)
                best, wit = m, (i, j, int(k), int(l))
    return best, wit


def four_point_delta(graph: ExplorableGraph, radius: int, sample_cap: int = 400_000_000,
                     seed: int = 0, cap: int = DEFAULT_CAP) -> DeltaEstimate:
    """Least half-integer delta satisfying the four-point condition on the ball.

    The ball is grown one sphere at a time and the estimate at each radius is
    the max of the previous estimate and the new evaluation, so results are
    monotone in ``radius``.  A radius is evaluated exhaustively when the ball
    has at most ``sample_cap ** (1/4)`` vertices; otherwise an exhaustive
    evaluation over a seeded random vertex subset of that size (always holding
    the previous witness) gives a lower estimate and ``exhaustive`` is False.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    ball = ball_bfs(graph, graph.origin, radius, cap)
    rng = np.random.default_rng(seed)
    m_max = max(4, int(round(sample_cap ** 0.25)))
    best2 = 0  # twice the current delta
    wit_vertices: tuple = ()
    exhaustive = not ball.budget_exhausted
    total = 0
    verts: list = []
    for k, sphere in enumerate(ball.spheres):
        verts = verts + sphere
        if len(verts) < 4:
            continue
        if len(verts) <= m_max:
            subset = verts
        else:
            exhaustive = False
            pinned = list(dict.fromkeys(wit_vertices))
            pool = [v for v in verts if v not in set(pinned)]
            idx = rng.choice(len(pool), size=m_max - len(pinned), replace=False)
            subset = pinned + [pool[i] for i in sorted(idx)]
        D = distance_matrix(graph, subset, cap)
        total += len(subset) ** 4
        val, w = _four_point_exhaustive(D)
        if val > best2:
            best2 = val
            wit_vertices = tuple(subset[i] for i in w)
    return DeltaEstimate(best2 / 2, radius, exhaustive, witness=wit_vertices or None, quadruples=total)


# ---------------------------------------------------------------------------
# Bowditch sets

def _p_sets(graph, a, I, domain_radius: int, cap: int, some: bool) -> list:
    banned = {frozenset(e) for e in I}
    ball = ball_bfs(graph, a, domain_radius, cap)
    if ball.budget_exhausted:
        raise CapExceeded("domain ball exceeds the vertex cap")
    dist = ball.distance
    good = {a}
    for k, sphere in enumerate(ball.spheres[1:], start=1):
        for b in sphere:
            steps = [p in good and frozenset((p, b)) not in banned
                     for p in graph.neighbors(b) if dist.get(p) == k - 1]
            if (any if some else all)(steps):
                good.add(b)
    return [b for b in ball.vertices if b in good]


def restricted_P_set(graph: ExplorableGraph, a, I: Iterable[Edge], domain_radius: int,
                     cap: int = DEFAULT_CAP) -> list:
    """Vertices b within ``domain_radius`` of ``a`` such that no geodesic a -> b uses an edge of I.

    Edges are unoriented.  Every geodesic from a to b stays in the ball of
    radius d(a, b), so the answer is exact inside the domain.
    """
    return _p_sets(graph, a, I, domain_radius, cap, some=False)


def restricted_P_prime_set(graph: ExplorableGraph, a, I: Iterable[Edge], domain_radius: int,
                           cap: int = DEFAULT_CAP) -> list:
    """The weaker set: b is kept when at least one geodesic a -> b avoids I."""
    return _p_sets(graph, a, I, domain_radius, cap, some=True)


def shortest_path_lengths(graph: FiniteGraph) -> dict:
    """All-pairs distances on a finite graph by repeated BFS (inf when disconnected)."""
    out = {}
    for v in graph.vertices:
        d, _, _, _ = _bfs(graph, v, len(graph.vertices), len(graph.vertices) + 1)
        out[v] = d
    return out


def diameter(graph: FiniteGraph) -> float:
    sp = shortest_path_lengths(graph)
    n = len(graph.vertices)
    if any(len(d) < n for d in sp.values()):
        return math.inf
    return max((max(d.values()) for d in sp.values()), default=0)


def to_dot(graph, vertices: Iterable, name: str = "G", label: Callable | None = None,
           color: Callable | None = None) -> str:
    """Deterministic undirected DOT rendering of the induced subgraph on ``vertices``."""
    vs = _sorted(graph, set(vertices))
    ids = {v: i for i, v in enumerate(vs)}
    lines = [f"graph {name} {{"]
    for v in vs:
        attrs = [f'label="{label(v) if label else v}"']
        if color is not None:
            attrs.append(f'color="{color(v)}"')
        lines.append(f"  n{ids[v]} [{', '.join(attrs)}];")
    for v in vs:
        for w in _sorted(graph, graph.neighbors(v)):
            if w in ids and ids[v] < ids[w]:
                lines.append(f"  n{ids[v]} -- n{ids[w]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
