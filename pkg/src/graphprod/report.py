"""JSON-lines serialisation and DOT export of reports."""
from __future__ import annotations

import dataclasses
import json
import math
from typing import Any, Iterable

from .extension import ExtensionGraph, ExtVertex
from .graphs import BallReport, UnknownGirth, to_dot
from .words import NormalForm, format_word

SPHERE_COLORS = ["black", "red", "orange", "gold", "green", "blue", "purple", "gray"]


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, ExtVertex):
        return {"base": obj.base, "conjugator": format_word(obj.conjugator)}
    if isinstance(obj, NormalForm):
        return format_word(obj)
    if isinstance(obj, UnknownGirth):
        return str(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(x) for x in obj), key=lambda x: json.dumps(x, sort_keys=True))
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return obj


def _key(k) -> str:
    if isinstance(k, str):
        return k
    v = to_jsonable(k)
    return v if isinstance(v, str) else json.dumps(v, sort_keys=True)


def dumps(record: dict) -> str:
    return json.dumps(to_jsonable(record), sort_keys=True, ensure_ascii=False)


def write_jsonl(records: Iterable[dict], fh) -> None:
    for r in records:
        fh.write(dumps(r) + "\n")


def export_dot(report: BallReport | None, graph=None, name: str = "Ball") -> str:
    """Deterministic DOT for a ball report (sphere-coloured; extension balls by base vertex)."""
    if report is None or not report.distance:
        return f"graph {name} {{\n}}\n"
    if isinstance(graph, ExtensionGraph):
        return graph.to_dot(report.vertices)

    def label(x):
        return format_word(x) if isinstance(x, NormalForm) else str(x)

    return to_dot(graph, report.vertices, name=name, label=label,
                  color=lambda x: SPHERE_COLORS[report.distance[x] % len(SPHERE_COLORS)])
