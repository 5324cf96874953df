"""
Basis and dimension of a finite lattice.

A basis is an antichain of nonzero elements such that every nonzero
element lies above one of them; its members are called basons and its
size is the dimension.  In a finite lattice the basis always exists and
consists of the minimal nonzero elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core import FiniteLattice, complement_indices, join_all


@dataclass(frozen=True)
class BasisResult:
    exists: bool
    basons: frozenset[str]
    dimension: Optional[int]


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    # (x, S) with x equal to the join of S
    witness: Optional[tuple[str, frozenset[str]]] = None


def basis_indices(L: FiniteLattice) -> list[int]:
    nonzero = [x for x in range(L.n) if x != L.bottom]
    return [x for x in nonzero if not any(y != x and L.leq[y][x] for y in nonzero)]


def _is_basis(L: FiniteLattice, cand: list[int]) -> bool:
    antichain = all(not L.leq[a][b] for a in cand for b in cand if a != b)
    covering = all(any(L.leq[b][z] for b in cand) for z in range(L.n) if z != L.bottom)
    return antichain and covering and L.bottom not in cand


def basis(L: FiniteLattice) -> BasisResult:
    cand = basis_indices(L)
    if not _is_basis(L, cand):
        return BasisResult(False, frozenset(), None)
    return BasisResult(True, L.names(cand), len(cand))


def dimension(L: FiniteLattice) -> int:
    return basis(L).dimension


def is_orthogonal_basis(L: FiniteLattice) -> bool:
    """Every bason has at least one complement that is itself a bason.

    The empty basis of the one-element lattice is not orthogonal.
    """
    B = set(basis_indices(L))
    if not B:
        return False
    return all(any(c in B for c in complement_indices(L, x)) for x in B)


def is_isolated_basis(L: FiniteLattice) -> bool:
    from .structure import isolated_indices

    B = basis_indices(L)
    if not B:
        return False
    iso = set(isolated_indices(L))
    return all(x in iso for x in B)


def dependence_witness(L: FiniteLattice, members: list[int]):
    # Any S that joins to x lies inside D = {s <= x}, and then join(D) = x too;
    # so checking D per x decides dependence. D is then shrunk to a minimal witness.
    for x in members:
        below = [s for s in members if s != x and L.leq[s][x]]
        if len(below) < 2 or join_all(L, below) != x:
            continue
        S = list(below)
        for s in list(S):
            rest = [t for t in S if t != s]
            if len(rest) >= 2 and join_all(L, rest) == x:
                S = rest
        return x, S
    return None


def is_independent(L: FiniteLattice, subset: Iterable[str]) -> IndependenceVerdict:
    """Decide whether no member of ``subset`` is the join of two or more others."""
    members = sorted(set(L.indices(subset)))
    dep = dependence_witness(L, members)
    if dep is None:
        return IndependenceVerdict(True)
    x, S = dep
    return IndependenceVerdict(False, (L.labels[x], L.names(S)))


def is_independent_indices(L: FiniteLattice, members: Iterable[int]) -> bool:
    return dependence_witness(L, sorted(set(members))) is None
