"""Exact arithmetic in a graph product through canonical normal forms.

A syllable is a pair ``(vertex, index)`` with ``index`` a nontrivial element
of the vertex group.  Words are sequences of syllables; a :class:`NormalForm`
is the canonical geodesic word of an element:

* reduce: merge any syllable into an earlier one on the same vertex when every
  syllable in between lies on a neighbouring vertex (dropping it when the
  product is trivial);
* order: repeatedly emit the front-movable syllable with the least vertex id,
  i.e. take the lexicographically least shuffle.

Two elements are equal iff their normal forms are equal tuples.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .defining_graph import DefiningGraph
from .errors import CapExceeded, VertexGroupMismatch

Syllable = tuple[int, int]
Word = Sequence[Syllable]


class NormalForm(tuple):
    """A canonical normal form; an ordinary tuple of syllables."""

    __slots__ = ()

    @property
    def length(self) -> int:
        return len(self)

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self)

    def __repr__(self):
        return f"NF[{format_word(self)}]"


IDENTITY = NormalForm()


def validate_word(w: Iterable, G: DefiningGraph) -> list[Syllable]:
    out = []
    for s in w:
        try:
            v, x = s
        except (TypeError, ValueError):
            raise VertexGroupMismatch(f"syllable {s!r} is not a (vertex, element) pair") from None
        grp = G.groups.get(v)
        if grp is None:
            raise VertexGroupMismatch(f"syllable {s!r}: unknown vertex {v!r}")
        if not isinstance(x, int) or not 0 < x < grp.order:
            raise VertexGroupMismatch(f"syllable {s!r}: element must be a nontrivial index of {grp!r}")
        out.append((v, x))
    return out


def _reduce_into(acc: list[Syllable], w: Iterable[Syllable], G: DefiningGraph) -> list[Syllable]:
    """Push syllables of ``w`` onto the reduced word ``acc`` one by one.

    A new syllable on vertex v merges with the last syllable of ``acc`` that
    can be shuffled to the end, if that syllable also lies on v.
    """
    links = G.links
    groups = G.groups
    for v, x in w:
        lk = links[v]
        for i in range(len(acc) - 1, -1, -1):
            u = acc[i][0]
            if u == v:
                y = groups[v].table[acc[i][1]][x]
                if y:
                    acc[i] = (v, y)
                else:
                    del acc[i]
                break
            if u not in lk:
                acc.append((v, x))
                break
        else:
            acc.append((v, x))
    return acc


def _canonical_order(reduced: list[Syllable], G: DefiningGraph) -> NormalForm:
    """Lexicographically least shuffle: a least-vertex-first topological sort.

    Syllable j must stay after an earlier syllable i unless their vertices
    are adjacent; two syllables on one vertex are never both available.
    """
    n = len(reduced)
    if n < 2:
        return NormalForm(reduced)
    links = G.links
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for j in range(1, n):
        lk = links[reduced[j][0]]
        for i in range(j):
            if reduced[i][0] not in lk:
                indeg[j] += 1
                succ[i].append(j)
    heap = [(reduced[j][0], j) for j in range(n) if not indeg[j]]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(reduced[i])
        for j in succ[i]:
            indeg[j] -= 1
            if not indeg[j]:
                heapq.heappush(heap, (reduced[j][0], j))
    return NormalForm(out)


def normal_form(w: Word, G: DefiningGraph, validate: bool = True) -> NormalForm:
    """Canonical normal form of the element spelled by ``w``."""
    if validate:
        w = validate_word(w, G)
    return _canonical_order(_reduce_into([], w, G), G)


def multiply(x: Word, y: Word, G: DefiningGraph) -> NormalForm:
    acc = list(x) if isinstance(x, NormalForm) else _reduce_into([], x, G)
    return _canonical_order(_reduce_into(acc, y, G), G)


def product_report(x: NormalForm, y: NormalForm, G: DefiningGraph) -> tuple[NormalForm, bool]:
    """``(xy, reduced)`` where ``reduced`` means ||xy|| = ||x|| + ||y||."""
    xy = multiply(x, y, G)
    return xy, len(xy) == len(x) + len(y)


def multiply_all(parts: Iterable[Word], G: DefiningGraph) -> NormalForm:
    acc: list[Syllable] = []
    for p in parts:
        _reduce_into(acc, p, G)
    return _canonical_order(acc, G)


def invert(x: Word, G: DefiningGraph) -> NormalForm:
    groups = G.groups
    return normal_form([(v, groups[v].inverse[e]) for v, e in reversed(x)], G, validate=False)


def power(x: NormalForm, n: int, G: DefiningGraph) -> NormalForm:
    if n < 0:
        x, n = invert(x, G), -n
    result, base = IDENTITY, x
    while n:
        if n & 1:
            result = multiply(result, base, G)
        base = multiply(base, base, G)
        n >>= 1
    return result


def conjugate(g: NormalForm, x: NormalForm, G: DefiningGraph) -> NormalForm:
    """g x g^-1."""
    return multiply_all((g, x, invert(g, G)), G)


def support_query(x: NormalForm) -> tuple[frozenset, int]:
    return frozenset(v for v, _ in x), len(x)


def is_geodesic(w: Word, G: DefiningGraph) -> bool:
    """Normal-form test: no two syllables on one vertex separated only by link vertices.

    This also rules out equal adjacent vertices (nothing in between).
    """
    links = G.links
    for i, (v, _) in enumerate(w):
        lk = links[v]
        for j in range(i + 1, len(w)):
            u = w[j][0]
            if u == v:
                return False
            if u not in lk:
                break
    return True


def enumerate_normal_forms(x: Word, G: DefiningGraph, cap: int = 10_000) -> tuple[set, bool]:
    """Closure of ``x`` under swaps of adjacent syllables on adjacent vertices.

    Returns ``(words, overflow)``; with ``overflow`` the set is partial.
    """
    start = tuple(x)
    seen = {start}
    stack = [start]
    overflow = False
    links = G.links
    while stack:
        w = stack.pop()
        for i in range(len(w) - 1):
            if w[i + 1][0] in links[w[i][0]]:
                nxt = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if nxt not in seen:
                    if len(seen) >= cap:
                        overflow = True
                        stack.clear()
                        break
                    seen.add(nxt)
                    stack.append(nxt)
    return seen, overflow


def enumerate_normal_forms_strict(x: Word, G: DefiningGraph, cap: int = 10_000) -> set:
    words, overflow = enumerate_normal_forms(x, G, cap)
    if overflow:
        raise CapExceeded(f"more than {cap} shuffles")
    return words


def is_reduced_decomposition(parts: Sequence[Word], G: DefiningGraph) -> bool:
    total = sum(len(normal_form(p, G, validate=False)) for p in parts)
    return len(multiply_all(parts, G)) == total


def front_movable(x: Word, G: DefiningGraph) -> list[int]:
    """Indices of syllables that shuffle to the front of ``x``."""
    links = G.links
    out = []
    for j, (v, _) in enumerate(x):
        lk = links[v]
        if all(x[i][0] in lk for i in range(j)):
            out.append(j)
    return out


def generators(G: DefiningGraph) -> list[Syllable]:
    return [(v, e) for v, grp in G.groups.items() for e in grp.nontrivial()]


def parse_word(text: str, G: DefiningGraph | None = None) -> list[Syllable]:
    """Parse ``"v:idx v:idx ..."``; ``"e"`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "e", "ε"):
        return []
    out = []
    for tok in text.split():
        try:
            v, x = tok.split(":")
            out.append((int(v), int(x)))
        except ValueError:
            raise VertexGroupMismatch(f"bad syllable token {tok!r}; expected 'vertex:index'") from None
    if G is not None:
        validate_word(out, G)
    return out


def format_word(w: Word) -> str:
    return " ".join(f"{v}:{x}" for v, x in w) if len(w) else "e"
