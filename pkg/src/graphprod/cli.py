"""Command-line front end.

Every command writes JSON-lines records (or DOT / text) to stdout.  Each
record carries the budget that produced it and a ``truncated`` flag.

Exit status: 0 ok, 1 invalid input, 2 budget exhausted (partial results
flagged), 3 invariant-suite failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from . import fixtures
from .cayley import CayleyGraph
from .cosets import decompose, in_FG, in_RF, left_coset_rep
from .defining_graph import finiteness_predicates, graph_summary, load_graph
from .dynamics import REPORT_NOTE, bounded_order, fixed_ext_vertices, wandering_orbit_experiment
from .errors import CapExceeded, GraphProductError, InvalidInput, Unreachable
from .extension import ExtensionGraph, ExtVertex, canonicalize_ext, ext_act, ext_stabilizer_test
from .graphs import (ball_bfs, bigon_check, circuits_through_edge, edge_key, fineness_probe,
                     four_point_delta, geodesics, girth)
from .report import dumps, export_dot
from .verify import run_suite
from .wreath import (WreathElem, conjugation_action_on_cayley, load_action, wreath_mul,
                     wreath_stabilizer_probe)
from .words import NormalForm, format_word, normal_form, parse_word, support_query

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class Run:
    """Collects records for one invocation and renders them."""

    def __init__(self, args):
        self.args = args
        self.truncated = False
        self.failed = False
        self.records: list[dict] = []
        self.dot: str | None = None
        self.text: list[str] = []

    @property
    def caps(self) -> dict:
        a = self.args
        return {k: getattr(a, k) for k in ("radius", "cap", "window", "order_bound") if getattr(a, k, None) is not None}

    def emit(self, kind: str, truncated: bool = False, **data):
        self.truncated |= truncated
        rec = {"command": self.args.command, "record": kind, "seed": self.args.seed,
               "caps": self.caps, "truncated": truncated}
        rec.update(data)
        self.records.append(rec)

    def render(self, out) -> None:
        fmt = self.args.format
        if fmt == "dot" and self.dot is not None:
            out.write(self.dot)
        elif fmt == "text" and self.text:
            out.write("\n".join(self.text) + "\n")
        else:
            for r in self.records:
                out.write(dumps(r) + "\n")


def _graph(args):
    return load_graph(fixtures.resolve(args.graph), name=args.graph)


def _word(args, G, attr="word") -> NormalForm:
    return normal_form(parse_word(getattr(args, attr) or "e", G), G)


def _window(args) -> int:
    return 1 if args.window is None else args.window


def _vertex_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InvalidInput(f"bad vertex list {text!r}") from None


def _ext_vertex(text: str, G) -> ExtVertex:
    """``base@word``, e.g. ``0@2:1`` or ``1@e``."""
    base, _, word = text.partition("@")
    try:
        v = int(base)
    except ValueError:
        raise InvalidInput(f"bad extension vertex {text!r}; expected base@word") from None
    return canonicalize_ext(v, normal_form(parse_word(word or "e", G), G), G)


# ---------------------------------------------------------------------------
# commands

def cmd_graph(run: Run):
    G = _graph(run.args)
    pred = finiteness_predicates(G)
    run.emit("graph", **graph_summary(G), predicates=pred, document=G.to_doc())
    run.dot = G.to_dot()
    run.text.append(f"{G!r} girth={G.girth} diam={pred.diameter}")


def cmd_nf(run: Run):
    G = _graph(run.args)
    raw = parse_word(run.args.word or "e", G)
    g = normal_form(raw, G)
    supp, length = support_query(g)
    run.emit("normal_form", input=format_word(raw), normal_form=g, support=supp, length=length)
    run.text.append(format_word(g))


def cmd_coset(run: Run):
    G = _graph(run.args)
    g = _word(run.args, G)
    F = _vertex_list(run.args.F)
    dec = decompose(g, F, G)
    run.emit("coset", element=g, F=sorted(F), p=dec.p, r=dec.r, in_FG=in_FG(g, F, G),
             in_RF=in_RF(g, F, G), left_coset_rep=left_coset_rep(g, F, G))
    run.text.append(f"{format_word(dec.p)} | {format_word(dec.r)}")


def cmd_cayley(run: Run):
    a = run.args
    G = _graph(a)
    X = CayleyGraph(G)
    op = a.op
    if op == "ball":
        ball = ball_bfs(X, X.origin, a.radius, a.cap)
        run.emit("ball", truncated=ball.budget_exhausted, sphere_sizes=ball.sphere_sizes,
                 vertices=len(ball), edges=ball.edge_count)
        for k, sphere in enumerate(ball.spheres):
            for x in sphere:
                run.emit("vertex", distance=k, element=x)
        run.dot = export_dot(ball, X)
        run.text.append(" ".join(map(str, ball.sphere_sizes)))
    elif op == "geodesics":
        target = _word(a, G, "target")
        gs = geodesics(X, _word(a, G), target, cap=a.cap)
        run.emit("geodesics", truncated=gs.truncated, length=gs.length, count=len(gs.paths))
        for p in gs.paths:
            run.emit("geodesic", path=list(p))
    elif op == "girth":
        g = girth(X, a.radius, a.cap)
        run.emit("girth", truncated=not isinstance(g, int), girth=g)
        run.text.append(str(g))
    elif op == "circuits":
        x = _word(a, G)
        label = parse_word(a.label, G) if a.label else [X.generators[0]]
        if len(label) != 1:
            raise InvalidInput("--label must be a single syllable")
        y = normal_form(list(x) + label, G)
        rep = circuits_through_edge(X, (x, y), a.n, a.cap)
        run.emit("circuits", truncated=rep.truncated, edge=[x, y], n=a.n, count=rep.count,
                 based_count=rep.based_count, by_length=rep.by_length,
                 triangle_bound=G.groups[label[0][0]].order ** 2)
        for c in rep.circuits:
            run.emit("circuit", cycle=[list(k[1]) for k in c])
    elif op == "fineness":
        ball = ball_bfs(X, X.origin, 1, a.cap)
        edges = [(X.origin, y) for y in ball.spheres[1]] if len(ball.spheres) > 1 else []
        rep = fineness_probe(X, edges, a.n, a.cap)
        run.emit("fineness", truncated=rep.truncated, n_max=a.n, f=rep.f)
        for e in edges:
            run.emit("edge_counts", edge=list(e), counts=rep.counts[edge_key(X, *e)])
    elif op == "delta":
        est = four_point_delta(X, a.radius, sample_cap=a.sample_cap, seed=a.seed, cap=a.cap)
        run.emit("delta", truncated=not est.exhaustive, delta_four_point=est.delta_four_point,
                 exhaustive=est.exhaustive, radius_tested=est.radius_tested, witness=est.witness)
        run.text.append(str(est.delta_four_point))
    elif op == "bigon":
        rep = bigon_check(X, a.radius, a.delta, cap=a.cap)
        run.emit("bigon", truncated=rep.truncated, passed=rep.passed, delta=a.delta,
                 bigons_checked=rep.bigons_checked, max_deviation=rep.max_deviation,
                 witness=rep.witness, star_witness=rep.star_witness)
        run.text.append("PASS" if rep.passed else "FAIL")


def cmd_ext(run: Run):
    a = run.args
    G = _graph(a)
    op = a.op
    root = _ext_vertex(a.vertex, G) if a.vertex else ExtVertex(G.vertices[0], NormalForm())
    if op in ("ball", "link"):
        E = ExtensionGraph(G, _window(a), root, cap=a.cap)
        radius = 1 if op == "link" else a.radius
        ball = ball_bfs(E, root, radius, a.cap)
        verts = list(E.neighbors(root)) if op == "link" else ball.vertices
        run.emit(op, truncated=ball.budget_exhausted, window=_window(a), root=root,
                 sphere_sizes=ball.sphere_sizes, link_complete=False)
        for x in verts:
            run.emit("ext_vertex", vertex=x, distance=ball.distance.get(x))
        run.dot = export_dot(ball, E)
    elif op == "act":
        g = _word(a, G)
        run.emit("act", element=g, vertex=root, image=ext_act(g, root, G))
    elif op == "stab":
        g = _word(a, G)
        run.emit("stab", element=g, base=root.base, fixes=ext_stabilizer_test(g, root.base, G),
                 support_in_star=g.support <= G.stars[root.base])


def cmd_dyn(run: Run):
    a = run.args
    G = _graph(a)
    op = a.op
    if op == "order":
        st = bounded_order(_word(a, G), a.order_bound, G)
        run.emit("order", note=REPORT_NOTE, element=_word(a, G), status=str(st))
        run.text.append(str(st))
    elif op == "fixed":
        g = _word(a, G)
        root = _ext_vertex(a.vertex, G) if a.vertex else None
        fixed = fixed_ext_vertices(g, _window(a), a.radius, G, root=root, cap=a.cap)
        run.emit("fixed", note=REPORT_NOTE, element=g, count=len(fixed), link_complete=False)
        for x in fixed:
            run.emit("fixed_vertex", vertex=x)
    elif op == "wander":
        v = int(a.vertex.split("@")[0]) if a.vertex else G.vertices[0]
        if a.link_vertex is None:
            raise InvalidInput("--link-vertex is required")
        seq = [normal_form(parse_word(t, G), G) for t in a.seq.split(";")] if a.seq else [NormalForm()]
        sets = [[_ext_vertex(t, G) for t in s.split(",") if t] for s in (a.edge_set or [])]
        trace = wandering_orbit_experiment(v, a.link_vertex, seq, G, sets, window=a.window, cap=a.cap)
        run.emit("wander", note=trace.note, v=v, w=a.link_vertex, window=trace.window,
                 edge_sets=trace.edge_sets, pairwise_distinct=trace.pairwise_distinct,
                 eventually_in_P=trace.eventually_in_P())
        for s in trace.steps:
            run.emit("orbit_step", n=s.index, element=s.element, image=s.image,
                     distinct=s.distinct, in_P=s.in_P)


def cmd_wreath(run: Run):
    a = run.args
    G = _graph(a)
    if not a.action:
        raise InvalidInput("--action is required")
    action = load_action(fixtures.resolve(a.action, action=True), G)
    x = WreathElem(_word(a, G), a.actor or action.identity)
    if a.op == "mul":
        y = WreathElem(_word(a, G, "word2"), a.actor2 or action.identity)
        z = wreath_mul(action, x, y)
        run.emit("wreath_mul", x=list(x), y=list(y), product={"word": z.word, "actor": z.actor})
    elif a.op == "act":
        v = _word(a, G, "target")
        run.emit("wreath_act", x=list(x), vertex=v, image=conjugation_action_on_cayley(action, x, v))
    elif a.op == "probe":
        v = int(a.vertex.split("@")[0]) if a.vertex else G.vertices[0]
        run.emit("wreath_probe", **wreath_stabilizer_probe(action, v, a.element))


def cmd_verify(run: Run):
    a = run.args
    G = _graph(a)
    action = load_action(fixtures.resolve(a.action, action=True), G) if a.action else None
    passed = True
    for res in run_suite(G, seed=a.seed, radius=a.radius, window=_window(a), samples=a.samples,
                         cap=a.cap, action=action):
        passed &= res.passed
        run.emit("check", **res.record())
        run.text.append(f"{'PASS' if res.passed else 'FAIL'} {res.check} ({res.cases} cases)")
    run.emit("summary", passed=passed, fixture=a.graph)
    run.failed = not passed


COMMANDS = {"graph": cmd_graph, "nf": cmd_nf, "coset": cmd_coset, "cayley": cmd_cayley,
            "ext": cmd_ext, "dyn": cmd_dyn, "wreath": cmd_wreath, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="GraphDoc JSON path or bundled fixture name")
    common.add_argument("--action", help="action JSON path or bundled fixture name")
    common.add_argument("--word", help='element as "v:idx v:idx ..."; "e" is the identity')
    common.add_argument("--F", help="vertex list, e.g. 0,2")
    common.add_argument("--radius", type=int, default=3)
    common.add_argument("--window", type=int, help="conjugator length bound (default 1; wander sizes it to the orbit)")
    common.add_argument("--cap", type=int, default=100_000)
    common.add_argument("--order-bound", dest="order_bound", type=int, default=50)
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="graphprod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("graph", parents=[common], help="load a defining graph and report its predicates")
    sub.add_parser("nf", parents=[common], help="canonical normal form")
    sub.add_parser("coset", parents=[common], help="decompose g = p_F(g) r_F(g)")

    c = sub.add_parser("cayley", parents=[common], help="Cayley graph probes")
    c.add_argument("op", choices=["ball", "geodesics", "girth", "circuits", "fineness", "delta", "bigon"])
    c.add_argument("--target", help="end point for geodesics")
    c.add_argument("--label", help="edge label syllable for circuits")
    c.add_argument("--n", type=int, default=4, help="circuit length bound")
    c.add_argument("--delta", type=int, default=4)
    c.add_argument("--sample-cap", dest="sample_cap", type=int, default=400_000_000)

    e = sub.add_parser("ext", parents=[common], help="windowed extension graph")
    e.add_argument("op", choices=["ball", "link", "act", "stab"])
    e.add_argument("--vertex", help="extension vertex base@word (default: first vertex, trivial conjugator)")

    d = sub.add_parser("dyn", parents=[common], help="dynamics experiments")
    d.add_argument("op", choices=["order", "fixed", "wander"])
    d.add_argument("--vertex")
    d.add_argument("--link-vertex", dest="link_vertex", type=int)
    d.add_argument("--seq", help="stabiliser elements separated by ';'")
    d.add_argument("--edge-set", dest="edge_set", action="append",
                   help="comma-separated far endpoints base@word of edges at v; repeatable")

    w = sub.add_parser("wreath", parents=[common], help="semidirect product with graph symmetries")
    w.add_argument("op", choices=["mul", "act", "probe"])
    w.add_argument("--actor")
    w.add_argument("--word2")
    w.add_argument("--actor2")
    w.add_argument("--target")
    w.add_argument("--vertex")
    w.add_argument("--element", type=int, default=1)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite on a fixture")
    v.add_argument("--samples", type=int, default=100)
    return p


def main(argv: Iterable[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    run = Run(args)
    try:
        COMMANDS[args.command](run)
    except (CapExceeded, Unreachable) as exc:
        run.emit("error", truncated=True, error=type(exc).__name__, message=str(exc))
        run.render(out)
        return EXIT_BUDGET
    except (GraphProductError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    run.render(out)
    if run.failed:
        return EXIT_VERIFY
    if run.truncated:
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
