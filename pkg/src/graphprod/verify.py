"""Invariant suite run by ``graphprod verify``.

Every check returns a :class:`CheckResult`; the suite output is deterministic
for a given fixture, budget and seed (no timings, stable ordering).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

from .cayley import CayleyGraph
from .cosets import decompose, in_FG, in_RF, left_coset_rep, p_F, r_F, subgroup_ball
from .defining_graph import DefiningGraph
from .extension import ExtensionGraph, ExtVertex, canonicalize_ext, ext_act, ext_stabilizer_test
from .graphs import ball_bfs, circuits_through_edge
from .groups import GroupElem, element_order
from .wreath import (GraphAction, WreathElem, apply_automorphism, conjugation_action_on_cayley,
                     wreath_identity, wreath_inverse, wreath_mul)
from .words import (IDENTITY, NormalForm, enumerate_normal_forms, generators, invert, is_geodesic,
                    multiply, normal_form, support_query)


@dataclass
class CheckResult:
    check: str
    passed: bool
    cases: int
    witness: object = None
    budget: dict = field(default_factory=dict)

    def record(self) -> dict:
        return {"check": self.check, "passed": self.passed, "cases": self.cases,
                "witness": self.witness, "budget": self.budget}


def random_word(G: DefiningGraph, rng: random.Random, max_len: int) -> list:
    gens = generators(G)
    return [rng.choice(gens) for _ in range(rng.randint(0, max_len))]


def random_element(G: DefiningGraph, rng: random.Random, max_len: int) -> NormalForm:
    return normal_form(random_word(G, rng, max_len), G, validate=False)


def all_rf_by_shuffles(g: NormalForm, F: frozenset, G: DefiningGraph) -> bool:
    """R_F membership decided by enumerating every shuffle of g."""
    words, overflow = enumerate_normal_forms(g, G, cap=1 << 20)
    assert not overflow
    return all(not w or w[0][0] not in F for w in words)


# ---------------------------------------------------------------------------
# checks

def check_group_tables(G: DefiningGraph) -> CheckResult:
    cases = 0
    for v, grp in G.groups.items():
        n = grp.order
        for g, h, k in product(range(n), repeat=3):
            cases += 1
            if grp.mul(grp.mul(g, h), k) != grp.mul(g, grp.mul(h, k)):
                return CheckResult("group_tables", False, cases, {"vertex": v, "triple": [g, h, k]})
        for g in range(n):
            cases += 1
            if n % element_order(GroupElem(grp, g)):
                return CheckResult("group_tables", False, cases, {"vertex": v, "lagrange": g})
    return CheckResult("group_tables", True, cases)


def check_nf_roundtrip(G: DefiningGraph, rng: random.Random, samples: int, max_len: int) -> CheckResult:
    for i in range(samples):
        w = random_word(G, rng, max_len)
        g = normal_form(w, G, validate=False)
        if multiply(g, invert(g, G), G) != IDENTITY:
            return CheckResult("nf_roundtrip", False, i + 1, {"word": w, "reason": "g g^-1 != e"})
        if normal_form(g, G) != g or not is_geodesic(g, G):
            return CheckResult("nf_roundtrip", False, i + 1, {"word": w, "reason": "not idempotent"})
        if len(invert(g, G)) != len(g):
            return CheckResult("nf_roundtrip", False, i + 1, {"word": w, "reason": "inverse length"})
    return CheckResult("nf_roundtrip", True, samples, budget={"samples": samples, "max_len": max_len})


def check_nf_confluence(G: DefiningGraph, rng: random.Random, samples: int, max_len: int) -> CheckResult:
    cases = 0
    for _ in range(samples):
        g = random_element(G, rng, max_len)
        sig = support_query(g)
        words, overflow = enumerate_normal_forms(g, G, cap=5000)
        for m in sorted(words):
            cases += 1
            if normal_form(m, G, validate=False) != g or support_query(NormalForm(m)) != sig:
                return CheckResult("nf_confluence", False, cases, {"element": list(g), "shuffle": list(m)})
            for i in range(len(m)):
                for j in range(i + 1, len(m) + 1):
                    if not is_geodesic(m[i:j], G):
                        return CheckResult("nf_confluence", False, cases,
                                           {"element": list(g), "subword": [i, j]})
    return CheckResult("nf_confluence", True, cases, budget={"samples": samples, "max_len": max_len})


def check_word_metric(G: DefiningGraph, radius: int, cap: int) -> CheckResult:
    X = CayleyGraph(G)
    ball = ball_bfs(X, X.origin, radius, cap)
    for g, d in ball.distance.items():
        if d != len(g):
            return CheckResult("word_metric", False, len(ball), {"element": list(g), "bfs": d})
    return CheckResult("word_metric", True, len(ball),
                       budget={"radius": radius, "cap": cap, "truncated": ball.budget_exhausted})


def coset_subsets(G: DefiningGraph) -> list[frozenset]:
    subs = {frozenset()}
    for v in G.vertices:
        subs.add(frozenset([v]))
        subs.add(G.stars[v])
    if len(G.vertices) <= 3:
        for mask in range(1 << len(G.vertices)):
            subs.add(frozenset(v for i, v in enumerate(G.vertices) if mask >> i & 1))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def check_coset_suite(G: DefiningGraph, radius: int, cap: int, left_radius: int = 2) -> CheckResult:
    """Uniqueness of g = p r, the R_F closure law and both p_F laws on the ball."""
    X = CayleyGraph(G)
    ball = ball_bfs(X, X.origin, radius, cap).vertices
    name = "coset_suite"
    cases = 0
    gens = generators(G)
    for F in coset_subsets(G):
        FG = subgroup_ball(F, G, radius)
        FG_small = [h for h in FG if len(h) <= left_radius]
        rf_cache: dict = {}

        def rf(x):
            if x not in rf_cache:
                rf_cache[x] = all_rf_by_shuffles(x, F, G)
            return rf_cache[x]

        for g in ball:
            cases += 1
            dec = decompose(g, F, G)
            hits = [a for a in FG if rf(multiply(invert(a, G), g, G))]
            if hits != [dec.p] or multiply(dec.p, dec.r, G) != g or not in_FG(dec.p, F, G):
                return CheckResult(name, False, cases, {"F": sorted(F), "g": list(g), "hits": [list(h) for h in hits]})
            if in_RF(g, F, G) != rf(g):
                return CheckResult(name, False, cases, {"F": sorted(F), "g": list(g), "in_RF": in_RF(g, F, G)})
            for h in FG_small:
                if p_F(multiply(h, g, G), F, G) != multiply(h, dec.p, G):
                    return CheckResult(name, False, cases, {"F": sorted(F), "g": list(g), "left_law": list(h)})
            for s in gens:
                v = s[0]
                gh = multiply(g, (s,), G)
                if rf(g):
                    cond = len(gh) < len(g) + 1 or not g.support <= G.links[v] or v not in F
                    if cond and not in_RF(gh, F, G):
                        return CheckResult(name, False, cases, {"F": sorted(F), "g": list(g), "closure": s})
                p1, p2 = dec.p, p_F(gh, F, G)
                i = p1 != p2
                ii = v in F and r_F(g, F, G).support <= G.links[v]
                iii = p2 == multiply(p1, (s,), G)
                if not (i == ii == iii):
                    return CheckResult(name, False, cases,
                                       {"F": sorted(F), "g": list(g), "h": s, "i_ii_iii": [i, ii, iii]})
            if left_coset_rep(g, F, G) != left_coset_rep(multiply(g, FG_small[-1], G), F, G):
                return CheckResult(name, False, cases, {"F": sorted(F), "g": list(g), "left_rep": True})
    return CheckResult(name, True, cases, budget={"radius": radius, "cap": cap})


def check_extension(G: DefiningGraph, window: int, radius: int, rng: random.Random,
                    samples: int, cap: int) -> CheckResult:
    name = "extension_graph"
    cases = 0
    E = ExtensionGraph(G, window, cap=cap)
    roots = [ExtVertex(v, IDENTITY) for v in G.vertices]
    for x, y in product(roots, repeat=2):
        cases += 1
        if E.adjacent(x, y) != (x.base in G.links[y.base]):
            return CheckResult(name, False, cases, {"embedding": [x.base, y.base]})
    verts = E.vertices
    for x in verts:
        nbrs = set(E.neighbors(x))
        cases += 1
        if x in nbrs:
            return CheckResult(name, False, cases, {"reflexive": repr(x)})
        for y in nbrs:
            if x not in E.neighbors(y):
                return CheckResult(name, False, cases, {"asymmetric": [repr(x), repr(y)]})
    X = CayleyGraph(G)
    for g in ball_bfs(X, X.origin, radius, cap).vertices:
        for v in G.vertices:
            cases += 1
            if ext_stabilizer_test(g, v, G) != (g.support <= G.stars[v]):
                return CheckResult(name, False, cases, {"stabilizer": [list(g), v]})
    for _ in range(samples):
        v = rng.choice(G.vertices)
        g = random_element(G, rng, 4)
        st = sorted(G.stars[v])
        h = normal_form([(u, rng.randrange(1, G.groups[u].order)) for u in rng.choices(st, k=rng.randint(0, 4))], G)
        cases += 1
        x = canonicalize_ext(v, g, G)
        if x != canonicalize_ext(v, multiply(g, h, G), G) or canonicalize_ext(v, x.conjugator, G) != x:
            return CheckResult(name, False, cases, {"coset": [v, list(g), list(h)]})
        k = random_element(G, rng, 3)
        if ext_act(k, ext_act(g, x, G), G) != ext_act(multiply(k, g, G), x, G):
            return CheckResult(name, False, cases, {"action": [list(k), list(g), repr(x)]})
    return CheckResult(name, True, cases, budget={"window": window, "radius": radius, "samples": samples})


def check_triangle_bound(G: DefiningGraph, radius: int, cap: int) -> CheckResult:
    X = CayleyGraph(G)
    ball = ball_bfs(X, X.origin, radius, cap)
    cases = 0
    for x in ball.vertices:
        for y, s in X.labeled_neighbors(x):
            if y not in ball.distance or X.key(y) < X.key(x):
                continue
            cases += 1
            c = circuits_through_edge(X, (x, y), 3).count
            bound = G.groups[s[0]].order ** 2
            if c > bound:
                return CheckResult("triangle_bound", False, cases, {"edge": [list(x), list(y)], "count": c})
    return CheckResult("triangle_bound", True, cases, budget={"radius": radius, "cap": cap})


def check_wreath(action: GraphAction, rng: random.Random, samples: int) -> CheckResult:
    G = action.G
    X = CayleyGraph(G)
    names = action.names()
    name = "wreath_product"
    e = wreath_identity(action)

    def rand_elem():
        return WreathElem(random_element(G, rng, 4), rng.choice(names))

    for i in range(samples):
        g1, g2 = rng.choice(names), rng.choice(names)
        w = random_element(G, rng, 5)
        if apply_automorphism(action, action.compose(g1, g2), w) != apply_automorphism(
                action, g1, apply_automorphism(action, g2, w)):
            return CheckResult(name, False, i + 1, {"homomorphism": [g1, g2, list(w)]})
        if len(apply_automorphism(action, g1, w)) != len(w):
            return CheckResult(name, False, i + 1, {"length": [g1, list(w)]})
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        if wreath_mul(action, wreath_mul(action, x, y), z) != wreath_mul(action, x, wreath_mul(action, y, z)):
            return CheckResult(name, False, i + 1, {"associativity": [repr(x), repr(y), repr(z)]})
        if wreath_mul(action, e, x) != x or wreath_mul(action, x, e) != x:
            return CheckResult(name, False, i + 1, {"identity": repr(x)})
        if wreath_mul(action, x, wreath_inverse(action, x)) != e or wreath_mul(action, wreath_inverse(action, x), x) != e:
            return CheckResult(name, False, i + 1, {"inverse": repr(x)})
        a, b = random_element(G, rng, 4), random_element(G, rng, 4)
        if X.distance(conjugation_action_on_cayley(action, x, a),
                      conjugation_action_on_cayley(action, x, b)) != X.distance(a, b):
            return CheckResult(name, False, i + 1, {"isometry": [repr(x), list(a), list(b)]})
    return CheckResult(name, True, samples, budget={"samples": samples})


def run_suite(G: DefiningGraph, seed: int = 0, radius: int = 3, window: int = 1,
              samples: int = 100, cap: int = 20_000, action: GraphAction | None = None) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_group_tables(G),
        lambda: check_nf_roundtrip(G, rng, samples, 12),
        lambda: check_nf_confluence(G, rng, max(1, samples // 5), 8),
        lambda: check_word_metric(G, radius, cap),
        lambda: check_coset_suite(G, min(radius, 3), cap),
        lambda: check_extension(G, window, min(radius, 3), rng, samples, cap),
        lambda: check_triangle_bound(G, min(radius, 2), cap),
    ]
    if action is not None:
        checks.append(lambda: check_wreath(action, rng, samples))
    for c in checks:
        yield c()
