"""
Finite lattices: parsing, validation, meet/join tables and export.

A lattice is read from a small JSON document listing the elements and
either the cover pairs (Hasse edges) or the full order relation.  The
relation is closed, checked for antisymmetry, and the meet and join
tables are filled by scanning lower and upper bound sets.  Indices are
internal; the public functions here speak in labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    DuplicateLabelError,
    EmptyLatticeError,
    NotAntisymmetricError,
    NotLatticeError,
    ParseError,
    UnknownLabelError,
)

RELATION_KINDS = ("covers", "leq")


@dataclass(frozen=True)
class LatticeDoc:
    elements: tuple[str, ...]
    relation_kind: str
    pairs: tuple[tuple[str, str], ...]

    def to_json_obj(self) -> dict:
        return {
            "elements": list(self.elements),
            "relation": self.relation_kind,
            "pairs": [list(p) for p in self.pairs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False)


@dataclass(frozen=True)
class FiniteLattice:
    """Immutable finite lattice.

    ``leq[x][y]`` is true iff element ``x`` is below ``y``.  The tables are
    indexed by declaration order of the labels.
    """

    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    covers: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def idx(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown element {label!r}", witness=label) from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.idx(lab) for lab in labels]

    def names(self, indices: Iterable[int]) -> frozenset[str]:
        return frozenset(self.labels[i] for i in indices)

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, labels={list(self.labels)!r})"


def _loads(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def check_labels(elements) -> tuple[str, ...]:
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError('"elements" must be a list of strings')
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateLabelError(f"duplicate label {e!r}", witness=e)
        seen.add(e)
    return tuple(elements)


def parse_lattice_doc(text: bytes | str) -> LatticeDoc:
    """Parse a lattice JSON document and check its label invariants."""
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object")
    for key in ("elements", "relation", "pairs"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    elements = check_labels(obj["elements"])
    kind = obj["relation"]
    if kind not in RELATION_KINDS:
        raise ParseError(f'"relation" must be one of {RELATION_KINDS}, got {kind!r}')
    raw_pairs = obj["pairs"]
    if not isinstance(raw_pairs, list):
        raise ParseError('"pairs" must be a list')
    declared = set(elements)
    pairs = []
    seen = set()
    for p in raw_pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(s, str) for s in p)):
            raise ParseError(f"pair must be a list of two strings, got {p!r}")
        for s in p:
            if s not in declared:
                raise UnknownLabelError(f"pair {p!r} uses undeclared label {s!r}", witness=s)
        key = (p[0], p[1])
        if key in seen:
            raise ParseError(f"duplicate pair {p!r}")
        seen.add(key)
        pairs.append(key)
    return LatticeDoc(elements, kind, tuple(pairs))


def transitive_closure(rel) -> np.ndarray:
    """Reflexive-transitive closure (Warshall) of a boolean matrix."""
    c = np.array(rel, dtype=bool)
    np.fill_diagonal(c, True)
    for k in range(c.shape[0]):
        c |= c[:, k : k + 1] & c[k : k + 1, :]
    return c


def transitive_reduction(leq) -> list[tuple[int, int]]:
    """Hasse edges of a partial order given as a closed boolean matrix."""
    strict = np.array(leq, dtype=bool)
    np.fill_diagonal(strict, False)
    s = strict.astype(np.float32)
    between = (s @ s) > 0
    xs, ys = np.nonzero(strict & ~between)
    return list(zip(xs.tolist(), ys.tolist()))


def _find_cycle(adj, start, goal):
    # BFS path start -> goal over the declared pairs
    prev = {start: None}
    queue = [start]
    for u in queue:
        if u == goal and u != start:
            break
        for v in adj[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return path[::-1]


def _bound_table(leq, labels, which):
    # below[y, z] is z <= y. For fixed x, row y of below & below[x] is the set
    # of lower bounds of (x, y); a lower bound g is the meet iff its down-set
    # is exactly that set, i.e. iff the two have the same size.
    below = np.ascontiguousarray(leq.T)
    n = below.shape[0]
    down = below.sum(axis=1)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        lower = below & below[x]
        match = lower & (down[None, :] == lower.sum(axis=1)[:, None])
        ok = match.any(axis=1)
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            raise NotLatticeError(
                f"{labels[x]!r} and {labels[y]!r} have no {which}", witness=[labels[x], labels[y]]
            )
        table[x] = match.view(np.uint8).argmax(axis=1)
    return table.tolist()


def build_lattice(doc: LatticeDoc) -> FiniteLattice:
    """Close the relation, validate it, and build meet/join tables."""
    labels = doc.elements
    n = len(labels)
    if n == 0:
        raise EmptyLatticeError("lattice has no elements")
    index = {lab: i for i, lab in enumerate(labels)}
    rel = np.zeros((n, n), dtype=bool)
    adj = [[] for _ in range(n)]
    for a, b in doc.pairs:
        i, j = index[a], index[b]
        if i == j:
            if doc.relation_kind == "covers":
                raise NotAntisymmetricError(f"{a!r} < {a!r} declared", witness=[a, a])
            continue
        rel[i, j] = True
        adj[i].append(j)
    leq = transitive_closure(rel)

    anti = leq & leq.T
    np.fill_diagonal(anti, False)
    if anti.any():
        i, j = (int(v) for v in np.argwhere(anti)[0])
        cycle = _find_cycle(adj, i, j) + _find_cycle(adj, j, i)[1:]
        names = [labels[k] for k in cycle]
        raise NotAntisymmetricError("order relation has a cycle: " + " <= ".join(names), witness=names)

    meet = _bound_table(leq, labels, "meet")
    join = _bound_table(leq.T, labels, "join")

    bottom = meet[0][0]
    top = join[0][0]
    for x in range(n):
        bottom = meet[bottom][x]
        top = join[top][x]

    return FiniteLattice(
        labels=tuple(labels),
        leq=tuple(tuple(row) for row in leq.tolist()),
        meet_table=tuple(tuple(row) for row in meet),
        join_table=tuple(tuple(row) for row in join),
        bottom=bottom,
        top=top,
        covers=tuple(transitive_reduction(leq)),
    )


def lattice_from_covers(labels, covers) -> FiniteLattice:
    return build_lattice(LatticeDoc(tuple(labels), "covers", tuple(covers)))


def load_lattice(path) -> FiniteLattice:
    with open(path, "rb") as fh:
        return build_lattice(parse_lattice_doc(fh.read()))


def lattice_to_doc(L: FiniteLattice) -> LatticeDoc:
    """Canonical document: declared element order plus the Hasse edges."""
    pairs = tuple((L.labels[a], L.labels[b]) for a, b in L.covers)
    return LatticeDoc(L.labels, "covers", pairs)


def leq(L: FiniteLattice, x: str, y: str) -> bool:
    return L.leq[L.idx(x)][L.idx(y)]


def meet(L: FiniteLattice, x: str, y: str) -> str:
    return L.labels[L.meet_table[L.idx(x)][L.idx(y)]]


def join(L: FiniteLattice, x: str, y: str) -> str:
    return L.labels[L.join_table[L.idx(x)][L.idx(y)]]


def join_all(L: FiniteLattice, items: Iterable[int]) -> int:
    """Join of a set of indices; the empty join is bottom."""
    acc = L.bottom
    for i in items:
        acc = L.join_table[acc][i]
    return acc


def atom_indices(L: FiniteLattice) -> list[int]:
    return [b for a, b in L.covers if a == L.bottom]


def atoms(L: FiniteLattice) -> frozenset[str]:
    """Elements covering the bottom."""
    return L.names(atom_indices(L))


def complement_indices(L: FiniteLattice, x: int) -> list[int]:
    m, j = L.meet_table[x], L.join_table[x]
    return [y for y in range(L.n) if m[y] == L.bottom and j[y] == L.top]


def complements(L: FiniteLattice, x: str) -> frozenset[str]:
    return L.names(complement_indices(L, L.idx(x)))


def is_chain(L: FiniteLattice) -> bool:
    return all(L.leq[x][y] or L.leq[y][x] for x in range(L.n) for y in range(x + 1, L.n))


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(L: FiniteLattice, name: str = "lattice") -> str:
    """Hasse diagram as a DOT digraph, edges pointing upward."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {_dot_id(lab)};" for lab in L.labels]
    lines += [f"  {_dot_id(L.labels[a])} -> {_dot_id(L.labels[b])};" for a, b in L.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"
