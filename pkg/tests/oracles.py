"""Independent reference computations used to freeze expected values.

Nothing here calls the library's basis, isomorphism, independence or
spectral code; the oracles work from the order matrix alone.
"""

from itertools import chain, combinations, permutations

import numpy as np


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def naive_bases(L):
    """Every subset of L minus bottom that is an antichain covering all nonzero elements."""
    nonzero = [x for x in range(L.n) if x != L.bottom]
    out = []
    for cand in powerset(nonzero):
        anti = all(not L.leq[a][b] for a in cand for b in cand if a != b)
        cover = all(any(L.leq[b][z] for b in cand) for z in nonzero)
        if anti and cover:
            out.append(frozenset(L.labels[i] for i in cand))
    return out


def _lub(L, items):
    upper = [z for z in range(L.n) if all(L.leq[i][z] for i in items)]
    return next(z for z in upper if all(L.leq[z][u] for u in upper))


def naive_dependent(L, labels):
    """Exhaustively search x in the set and S of size >= 2 among the others with lub(S) = x."""
    idx = [L.labels.index(s) for s in labels]
    for x in idx:
        others = [s for s in idx if s != x]
        for r in range(2, len(others) + 1):
            for S in combinations(others, r):
                if _lub(L, S) == x:
                    return True
    return False


def naive_isomorphic(L1, L2):
    if L1.n != L2.n:
        return False
    n = L1.n
    for perm in permutations(range(n)):
        if all(L1.leq[x][y] == L2.leq[perm[x]][perm[y]] for x in range(n) for y in range(n)):
            return True
    return False


def squaring_radius(A, squarings=60):
    """Gelfand limit ||A^(2^k)||_1^(1/2^k), with rescaling at every squaring."""
    M = np.array(A, dtype=float)
    log_scale = 0.0
    for k in range(squarings):
        s = np.abs(M).sum(axis=0).max()
        if s == 0:
            return 0.0
        M = M / s
        log_scale += np.log(s) / 2.0**k
        M = M @ M
    s = np.abs(M).sum(axis=0).max()
    if s == 0:
        return 0.0
    return float(np.exp(log_scale + np.log(s) / 2.0**squarings))


EXAMPLE_42_ARCS = [
    ("0", "x", 0.2), ("0", "y", 0.3), ("x", "1", 0.5), ("y", "1", 0.5),
    ("1", "x", 0.2), ("1", "y", 0.1), ("x", "0", 0.5), ("y", "0", 0.7),
]

# squaring oracle on the listed and closed matrices of the four-element example
EXAMPLE_42_LISTED_RHO = 0.6716646811281355
EXAMPLE_42_CLOSED_RHO = 1.9553954521619812
