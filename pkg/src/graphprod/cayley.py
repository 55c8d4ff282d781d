"""The Cayley graph of a graph product with respect to all nontrivial syllables.

Never materialised: neighbours are computed from the word engine on demand
and memoised in a bounded LRU cache keyed by canonical normal forms.
"""
from __future__ import annotations

from functools import lru_cache

from .defining_graph import DefiningGraph
from .errors import InvalidInput
from .words import IDENTITY, NormalForm, Syllable, generators, invert, multiply, normal_form


class CayleyGraph:
    vertex_transitive = True

    def __init__(self, G: DefiningGraph, cache_size: int = 1 << 16):
        self.G = G
        self.origin = IDENTITY
        self.generators: list[Syllable] = generators(G)
        self.cache_size = cache_size
        self._neighbors = lru_cache(maxsize=cache_size)(self._compute_neighbors)
        self._distance = lru_cache(maxsize=cache_size)(self._compute_distance)

    @staticmethod
    def key(x: NormalForm):
        return (len(x), tuple(x))

    def vertex(self, word) -> NormalForm:
        return normal_form(word, self.G)

    def _compute_neighbors(self, x: NormalForm) -> tuple:
        G = self.G
        return tuple(multiply(x, (s,), G) for s in self.generators)

    def neighbors(self, x: NormalForm) -> tuple:
        return self._neighbors(x)

    def labeled_neighbors(self, x: NormalForm) -> list[tuple[NormalForm, Syllable]]:
        """Pairs ``(x·s, s)`` over all nontrivial syllables s."""
        return list(zip(self._neighbors(x), self.generators))

    def _compute_distance(self, x: NormalForm, y: NormalForm) -> int:
        return len(multiply(invert(x, self.G), y, self.G))

    def distance(self, x: NormalForm, y: NormalForm) -> int:
        """Word metric: the syllable length of x^-1 y."""
        if x == y:
            return 0
        if not x:
            return len(y)
        if not y:
            return len(x)
        return self._distance(x, y)

    def edge_label(self, x: NormalForm, y: NormalForm) -> Syllable:
        d = multiply(invert(x, self.G), y, self.G)
        if len(d) != 1:
            raise InvalidInput(f"{x!r} and {y!r} are not adjacent")
        return d[0]

    def cache_info(self):
        return self._neighbors.cache_info()


def cayley_neighbors(X: CayleyGraph, x: NormalForm) -> list[tuple[NormalForm, Syllable]]:
    return X.labeled_neighbors(x)


def edge_label_distance_check(label1: Syllable, label2: Syllable, G: DefiningGraph) -> float:
    """d_Gamma between the supporting vertices of two edge labels (inf if disconnected)."""
    return G.distance(label1[0], label2[0])
