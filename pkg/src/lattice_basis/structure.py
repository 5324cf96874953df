"""Structural predicates: distributivity, complements, Boolean detection,
isolated elements, consistency, and exact isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import FiniteLattice, atom_indices, complement_indices, join_all
from .errors import TooLargeError

ISO_SIZE_BOUND = 64


@dataclass(frozen=True)
class ComplementationProfile:
    complemented: bool
    uniquely_complemented: bool


@dataclass(frozen=True)
class IsomorphismResult:
    found: bool
    mapping: Optional[dict[str, str]] = None


def distributivity_violation(L: FiniteLattice):
    """First triple (x, y, z) with x*(y+z) != (x*y)+(x*z), or None."""
    M, J = L.meet_table, L.join_table
    for x in range(L.n):
        for y in range(L.n):
            for z in range(y + 1, L.n):
                if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                    return x, y, z
    return None


def is_distributive(L: FiniteLattice) -> bool:
    return distributivity_violation(L) is None


def complementation_profile(L: FiniteLattice) -> ComplementationProfile:
    counts = [len(complement_indices(L, x)) for x in range(L.n)]
    return ComplementationProfile(
        complemented=all(c >= 1 for c in counts),
        uniquely_complemented=all(c == 1 for c in counts),
    )


def _boolean_by_atoms(L: FiniteLattice) -> bool:
    # atomistic with 2^k elements for k atoms <=> isomorphic to a powerset
    A = atom_indices(L)
    if L.n != 2 ** len(A):
        return False
    return all(join_all(L, [a for a in A if L.leq[a][x]]) == x for x in range(L.n))


def is_boolean(L: FiniteLattice) -> bool:
    verdict = is_distributive(L) and complementation_profile(L).complemented
    if verdict != _boolean_by_atoms(L):
        raise AssertionError(f"Boolean checks disagree on {L!r}")
    return verdict


def isolated_indices(L: FiniteLattice) -> list[int]:
    ends = (L.bottom, L.top)
    middle = [x for x in range(L.n) if x not in ends]
    out = []
    for x in middle:
        M, J = L.meet_table[x], L.join_table[x]
        if all(M[y] == L.bottom and J[y] == L.top for y in middle if y != x):
            out.append(x)
    return out


def isolated_elements(L: FiniteLattice) -> frozenset[str]:
    """Non-extreme elements complementary to every other non-extreme element.

    The condition is vacuous when ``x`` is the only non-extreme element, so
    the middle of a 3-chain counts as isolated.
    """
    return L.names(isolated_indices(L))


def is_consistent(L: FiniteLattice) -> bool:
    return not isolated_indices(L)


def _rank(L: FiniteLattice) -> list[int]:
    # longest chain length from bottom, via Hasse edges in a linear extension
    order = sorted(range(L.n), key=lambda x: sum(L.leq[y][x] for y in range(L.n)))
    rank = [0] * L.n
    for y in order:
        for a, b in L.covers:
            if b == y:
                rank[y] = max(rank[y], rank[a] + 1)
    return rank


def _signatures(L: FiniteLattice) -> list[tuple]:
    rank = _rank(L)
    up_deg = [0] * L.n
    down_deg = [0] * L.n
    for a, b in L.covers:
        up_deg[a] += 1
        down_deg[b] += 1
    return [
        (
            rank[x],
            sum(L.leq[x][y] for y in range(L.n)),
            sum(L.leq[y][x] for y in range(L.n)),
            up_deg[x],
            down_deg[x],
        )
        for x in range(L.n)
    ]


def find_isomorphism(L1: FiniteLattice, L2: FiniteLattice, bound: int = ISO_SIZE_BOUND) -> IsomorphismResult:
    """Backtracking search for an order isomorphism from ``L1`` onto ``L2``."""
    if L1.n > bound and L2.n > bound:
        raise TooLargeError(f"both lattices exceed the size bound {bound}")
    if L1.n != L2.n:
        return IsomorphismResult(False)
    s1, s2 = _signatures(L1), _signatures(L2)
    if sorted(s1) != sorted(s2):
        return IsomorphismResult(False)

    n = L1.n
    # most constrained first: rarest signature, then by rank
    freq = {}
    for s in s1:
        freq[s] = freq.get(s, 0) + 1
    order = sorted(range(n), key=lambda x: (freq[s1[x]], s1[x][0], x))
    cands = {x: [y for y in range(n) if s2[y] == s1[x]] for x in range(n)}
    f = [-1] * n
    used = [False] * n
    a, b = L1.leq, L2.leq

    def extend(depth):
        if depth == n:
            return True
        x = order[depth]
        for y in cands[x]:
            if used[y]:
                continue
            ok = True
            for d in range(depth):
                u = order[d]
                fu = f[u]
                if a[u][x] != b[fu][y] or a[x][u] != b[y][fu]:
                    ok = False
                    break
            if not ok:
                continue
            f[x] = y
            used[y] = True
            if extend(depth + 1):
                return True
            used[y] = False
            f[x] = -1
        return False

    if not extend(0):
        return IsomorphismResult(False)
    return IsomorphismResult(True, {L1.labels[x]: L2.labels[f[x]] for x in range(n)})
