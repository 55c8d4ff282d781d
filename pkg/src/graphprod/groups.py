"""Finite groups stored as validated multiplication tables.

Elements are plain integer indices; the identity is always index 0.  Input
tables whose identity sits elsewhere are relabelled on load.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, NamedTuple, Sequence

from .errors import GroupMismatch, MalformedTable, NoIdentity, NoInverse, NonAssociative


@dataclass(frozen=True, eq=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    label: str = ""
    identity_index: int = field(default=0, init=False)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def nontrivial(self) -> range:
        return range(1, self.order)

    def to_spec(self) -> dict:
        if self.label == f"Z{self.order}":
            return {"type": "cyclic", "n": self.order}
        spec = {"type": "table", "table": [list(r) for r in self.table]}
        if self.label:
            spec["label"] = self.label
        return spec

    def __repr__(self):
        return f"GroupTable({self.label or self.order})"


class GroupElem(NamedTuple):
    group: GroupTable
    index: int

    @property
    def is_identity(self) -> bool:
        return self.index == 0


def cyclic_group(n: int) -> GroupTable:
    if not isinstance(n, int) or n < 1:
        raise MalformedTable(f"cyclic group order must be a positive integer, got {n!r}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inverse = tuple((-i) % n for i in range(n))
    return GroupTable(n, table, inverse, label=f"Z{n}")


def _relabel(rows: list[list[int]], e: int) -> list[list[int]]:
    n = len(rows)
    old = [e] + [i for i in range(n) if i != e]
    new_of = {o: k for k, o in enumerate(old)}
    return [[new_of[rows[old[i]][old[j]]] for j in range(n)] for i in range(n)]


def table_group(rows: Sequence[Sequence[int]], label: str = "") -> GroupTable:
    """Validate an explicit Cayley table and return it with identity at index 0."""
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise MalformedTable(f"entry ({i},{j}) = {x!r} out of range [0,{n})")
    rows = [list(r) for r in rows]

    ident = next(
        (e for e in range(n) if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
        None,
    )
    if ident is None:
        raise NoIdentity("no element acts as a two-sided identity")
    if ident != 0:
        rows = _relabel(rows, ident)

    for g, h, k in product(range(n), repeat=3):
        if rows[rows[g][h]][k] != rows[g][rows[h][k]]:
            raise NonAssociative((g, h, k))

    inverse = []
    for g in range(n):
        inv = next((h for h in range(n) if rows[g][h] == 0 and rows[h][g] == 0), None)
        if inv is None:
            raise NoInverse(f"element {g} has no two-sided inverse (witness: ({g}, x, 0) unsolvable)")
        inverse.append(inv)

    # follows from the axioms above; kept as a cheap guard on the relabelling
    for g in range(n):
        if sorted(rows[g]) != list(range(n)) or sorted(r[g] for r in rows) != list(range(n)):
            raise MalformedTable(f"row/column {g} is not a permutation")

    return GroupTable(n, tuple(tuple(r) for r in rows), tuple(inverse), label=label)


def build_group(spec: Mapping) -> GroupTable:
    """Build a group from ``{"type": "cyclic", "n": k}`` or ``{"type": "table", "table": [...]}``."""
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic_group(spec.get("n"))
    if kind == "table":
        table = spec.get("table")
        if not isinstance(table, (list, tuple)):
            raise MalformedTable("'table' must be a list of rows")
        return table_group(table, label=spec.get("label", ""))
    raise MalformedTable(f"unknown group spec type {kind!r}")


def group_query(g: GroupElem, h: GroupElem | None = None, mode: str = "mul") -> GroupElem:
    if mode == "inv":
        return GroupElem(g.group, g.group.inv(g.index))
    if mode != "mul":
        raise ValueError(f"unknown mode {mode!r}")
    if h is None or g.group != h.group:
        raise GroupMismatch("cannot multiply elements of different groups")
    return GroupElem(g.group, g.group.mul(g.index, h.index))


def element_order(g: GroupElem) -> int:
    grp, x = g.group, g.index
    n, acc = 1, x
    while acc != 0:
        acc = grp.mul(acc, x)
        n += 1
    return n
