"""Bundled defining graphs and graph actions used by tests and the CLI."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..defining_graph import DefiningGraph, load_graph


def fixture_names() -> list[str]:
    root = resources.files(__name__)
    return sorted(p.name[:-5] for p in root.iterdir()
                  if p.name.endswith(".json") and not p.name.endswith(".action.json"))


def fixture_path(name: str, action: bool = False) -> Path:
    suffix = ".action.json" if action else ".json"
    return Path(str(resources.files(__name__).joinpath(name + suffix)))


def load_fixture(name: str) -> DefiningGraph:
    return load_graph(fixture_path(name), name=name)


def resolve(path_or_name: str, action: bool = False) -> Path:
    """A real file path, or the bundled fixture of that name."""
    p = Path(path_or_name)
    if p.exists():
        return p
    stem = p.name
    for suffix in (".action.json", ".json"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
    bundled = fixture_path(stem, action)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(path_or_name)
