"""
Weighted lattices and their entropy.

A weighted lattice grades the order: ``w[x][y] = p`` records ``x <=_p y``.
The axioms are reflexivity (``w[x][x] = 1``), the pair bound
``w[x][y] + w[y][x] <= 1`` for distinct ``x, y``, and min-transitivity
``w[x][z] >= min(w[x][y], w[y][z])``.  The max-min closure is the
least relation above the raw arcs satisfying the last one.

Entropy is the log of the spectral radius of the adjacency matrix, in one
of two modes:

``listed``
    the raw arcs only, zero diagonal;
``closed``
    the max-min closure with unit diagonal (the default).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import FiniteLattice, _loads, check_labels
from .errors import ParseError, UnknownLabelError, WeightRangeError
from .spectral import DEFAULT_TOL, MAX_ITER, spectral_radius

MODES = ("listed", "closed")
BASES = {"e": math.e, "2": 2.0}
EPS = 1e-12


@dataclass(frozen=True)
class WeightedLatticeDoc:
    elements: tuple[str, ...]
    arcs: tuple[tuple[str, str, float], ...]

    def to_json_obj(self) -> dict:
        return {
            "elements": list(self.elements),
            "arcs": [{"from": a, "to": b, "p": p} for a, b, p in self.arcs],
        }


@dataclass(frozen=True, eq=False)
class WeightedLattice:
    labels: tuple[str, ...]
    w: np.ndarray = field(repr=False)
    closed: bool = False

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, WeightedLattice):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.closed == other.closed
            and np.array_equal(self.w, other.w)
        )


@dataclass(frozen=True)
class Violation:
    axiom: str  # "i", "ii" or "iii"
    witness: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class EntropyReport:
    spectral_radius: float
    entropy: float  # -inf when the radius is 0
    chaotic: bool
    log_base: str
    mode: str
    iterations: int
    residual: float


def parse_weighted_doc(text: bytes | str) -> WeightedLatticeDoc:
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object")
    for key in ("elements", "arcs"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    elements = check_labels(obj["elements"])
    declared = set(elements)
    if not isinstance(obj["arcs"], list):
        raise ParseError('"arcs" must be a list')
    arcs, seen = [], set()
    for arc in obj["arcs"]:
        if not isinstance(arc, dict) or set(arc) != {"from", "to", "p"}:
            raise ParseError(f'arc must have exactly the keys "from", "to", "p": {arc!r}')
        a, b, p = arc["from"], arc["to"], arc["p"]
        if not isinstance(a, str) or not isinstance(b, str):
            raise ParseError(f"arc endpoints must be strings: {arc!r}")
        for s in (a, b):
            if s not in declared:
                raise UnknownLabelError(f"arc {arc!r} uses undeclared label {s!r}", witness=s)
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise ParseError(f"arc weight must be a number: {arc!r}")
        if not (0 < p <= 1):
            raise WeightRangeError(f"weight {p!r} of {a!r} -> {b!r} is outside (0, 1]", witness=(a, b, p))
        if a == b:
            raise ParseError(f"self-arc on {a!r}: reflexive weights are implicit")
        if (a, b) in seen:
            raise ParseError(f"duplicate arc {a!r} -> {b!r}")
        seen.add((a, b))
        arcs.append((a, b, float(p)))
    return WeightedLatticeDoc(elements, tuple(arcs))


def weighted_from_doc(doc: WeightedLatticeDoc) -> WeightedLattice:
    index = {lab: i for i, lab in enumerate(doc.elements)}
    w = np.zeros((len(doc.elements), len(doc.elements)))
    for a, b, p in doc.arcs:
        w[index[a], index[b]] = p
    return WeightedLattice(doc.elements, w, closed=False)


def load_weighted(path) -> WeightedLattice:
    with open(path, "rb") as fh:
        return weighted_from_doc(parse_weighted_doc(fh.read()))


def maxmin_closure(W: WeightedLattice) -> WeightedLattice:
    """Least max-min transitive relation above ``W``, with unit diagonal."""
    w = np.array(W.w, dtype=float)
    n = W.n
    # bottleneck-path Floyd-Warshall; one pass over pivots reaches the fixpoint
    for k in range(n):
        np.maximum(w, np.minimum(w[:, k : k + 1], w[k : k + 1, :]), out=w)
    np.fill_diagonal(w, 1.0)
    return WeightedLattice(W.labels, w, closed=True)


def _violations(labels, w, check_reflexive):
    n = len(labels)
    out = []
    if check_reflexive:
        for x in range(n):
            if abs(w[x, x] - 1.0) > EPS:
                out.append(Violation("i", (labels[x],), f"w[{labels[x]}][{labels[x]}] = {w[x, x]:g}, expected 1"))
    for x in range(n):
        for y in range(x + 1, n):
            s = w[x, y] + w[y, x]
            if s > 1.0 + EPS:
                out.append(Violation(
                    "ii", (labels[x], labels[y]),
                    f"w[{labels[x]}][{labels[y]}] + w[{labels[y]}][{labels[x]}] = {s:g} > 1",
                ))
    for x in range(n):
        for z in range(n):
            if x == z:
                continue
            for y in range(n):
                if y == x or y == z:
                    continue
                r = min(w[x, y], w[y, z])
                if w[x, z] < r - EPS:
                    out.append(Violation(
                        "iii", (labels[x], labels[y], labels[z]),
                        f"w[{labels[x]}][{labels[z]}] = {w[x, z]:g} < min(w[{labels[x]}][{labels[y]}], "
                        f"w[{labels[y]}][{labels[z]}]) = {r:g}",
                    ))
    return out


def validate_weighted(W: WeightedLattice, strict: bool = True) -> list[Violation]:
    """List axiom violations; empty when ``W`` is a valid weighted lattice.

    With ``strict`` the relation is checked as given, otherwise its max-min
    closure is checked.  Reflexivity is only checked on closed relations,
    since raw arc lists leave the diagonal implicit.
    """
    target = W if strict else maxmin_closure(W)
    return _violations(target.labels, target.w, target.closed)


def adjacency_matrix(W: WeightedLattice, mode: str = "closed") -> np.ndarray:
    if mode == "listed":
        A = np.array(W.w, dtype=float)
        np.fill_diagonal(A, 0.0)
        return A
    if mode == "closed":
        return np.array(maxmin_closure(W).w)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def entropy(
    W: WeightedLattice,
    mode: str = "closed",
    base: str = "e",
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> EntropyReport:
    if base not in BASES:
        raise ValueError(f"base must be one of {sorted(BASES)}, got {base!r}")
    rho, iterations, residual = spectral_radius(adjacency_matrix(W, mode), tol=tol, max_iter=max_iter)
    ent = math.log(rho, BASES[base]) if rho > 0 else -math.inf
    return EntropyReport(
        spectral_radius=rho,
        entropy=ent,
        chaotic=ent > 0,
        log_base=base,
        mode=mode,
        iterations=iterations,
        residual=residual,
    )


def lift_usual(L: FiniteLattice) -> WeightedLattice:
    """Embed an ordinary lattice: weight 1 on ``x <= y``, else 0."""
    return WeightedLattice(L.labels, np.array(L.leq, dtype=float), closed=True)


def dumps_weighted_doc(doc: WeightedLatticeDoc) -> str:
    return json.dumps(doc.to_json_obj())
