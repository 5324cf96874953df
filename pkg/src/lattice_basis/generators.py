"""Named lattices, seeded random lattices, and relabelled copies."""

from __future__ import annotations

import string
from itertools import combinations

import numpy as np

from .core import FiniteLattice, LatticeDoc, build_lattice, lattice_from_covers, lattice_to_doc
from .errors import ParamRangeError, TooLargeError, UnknownNameError

CATALOG_NAMES = ("chain", "bool", "m", "n5")
MAX_BOOL = 10
MAX_UNIVERSE = 16
BRUTE_FORCE_BOUND = 20


def _letters(k):
    if k <= 26:
        return list(string.ascii_lowercase[:k])
    return [f"m{i}" for i in range(1, k + 1)]


def chain(k: int) -> FiniteLattice:
    labels = [f"c{i}" for i in range(k)]
    return lattice_from_covers(labels, list(zip(labels, labels[1:])))


def boolean_lattice(n: int) -> FiniteLattice:
    """Powerset of ``n`` generators named a, b, c, ...

    The empty set is labelled "0", the full set "1", and every other subset
    by its generators, e.g. "ac".
    """
    gens = string.ascii_lowercase[:n]
    subsets = [frozenset(c) for r in range(n + 1) for c in combinations(gens, r)]

    def name(s):
        if not s:
            return "0"
        if len(s) == n:
            return "1"
        return "".join(sorted(s))

    labels = [name(s) for s in subsets]
    covers = [(name(s), name(s | {g})) for s in subsets for g in gens if g not in s]
    return lattice_from_covers(labels, covers)


def diamond(k: int) -> FiniteLattice:
    mids = _letters(k)
    covers = [("0", m) for m in mids] + [(m, "1") for m in mids]
    return lattice_from_covers(["0", *mids, "1"], covers)


def pentagon() -> FiniteLattice:
    return lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )


def named_lattice(name: str, k: int | None = None) -> FiniteLattice:
    """Catalog lattice: ``chain`` (k >= 1), ``bool`` (0 <= k <= 10), ``m`` (k >= 1) or ``n5``."""
    if name not in CATALOG_NAMES:
        raise UnknownNameError(f"unknown catalog name {name!r}; expected one of {CATALOG_NAMES}")
    if name == "n5":
        return pentagon()
    if not isinstance(k, int) or isinstance(k, bool):
        raise ParamRangeError(f"{name} needs an integer parameter")
    if name == "chain":
        if k < 1:
            raise ParamRangeError("chain needs k >= 1")
        return chain(k)
    if name == "bool":
        if not 0 <= k <= MAX_BOOL:
            raise ParamRangeError(f"bool needs 0 <= k <= {MAX_BOOL}")
        return boolean_lattice(k)
    if k < 1:
        raise ParamRangeError("m needs k >= 1")
    return diamond(k)


def catalog(max_n: int) -> list[tuple[str, FiniteLattice]]:
    """Every catalog lattice with at most ``max_n`` elements, in a fixed order."""
    out = [(f"chain_{k}", chain(k)) for k in range(1, max_n + 1)]
    out += [(f"bool_{k}", boolean_lattice(k)) for k in range(0, MAX_BOOL + 1) if 2**k <= max_n]
    out += [(f"m_{k}", diamond(k)) for k in range(1, max_n - 1)]
    if max_n >= 5:
        out.append(("n5", pentagon()))
    return out


def _set_label(s):
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def random_lattice(n_generators: int, m_universe: int, seed: int) -> FiniteLattice:
    """Intersection closure of random subsets of {1..m}, plus the empty and full sets.

    Each generator is a uniform random subset.  Elements are ordered by
    size and then lexicographically, and labelled like "{1,3}".
    """
    if not 0 <= m_universe <= MAX_UNIVERSE:
        raise ParamRangeError(f"m_universe must be in [0, {MAX_UNIVERSE}]")
    if n_generators < 0:
        raise ParamRangeError("n_generators must be >= 0")
    if seed < 0:
        raise ParamRangeError("seed must be nonnegative")
    rng = np.random.default_rng(seed)
    universe = frozenset(range(1, m_universe + 1))
    gens = [
        frozenset(int(i) + 1 for i in np.flatnonzero(rng.random(m_universe) < 0.5))
        for _ in range(n_generators)
    ]
    family = {frozenset(), universe, *gens}
    frontier = set(family)
    while frontier:
        new = {a & b for a in frontier for b in family} - family
        family |= new
        frontier = new
    members = sorted(family, key=lambda s: (len(s), sorted(s)))
    labels = [_set_label(s) for s in members]
    pairs = [
        (labels[i], labels[j])
        for i, a in enumerate(members)
        for j, b in enumerate(members)
        if i != j and a <= b
    ]
    return build_lattice(LatticeDoc(tuple(labels), "leq", tuple(pairs)))


def shuffled_copy(L: FiniteLattice, rng: np.random.Generator, prefix: str = "s") -> tuple[FiniteLattice, dict[str, str]]:
    """Isomorphic copy with permuted declaration order and fresh labels.

    Returns the copy and the relabelling used to make it.
    """
    perm = rng.permutation(L.n)
    rename = {L.labels[int(old)]: f"{prefix}{new}" for new, old in enumerate(perm)}
    doc = lattice_to_doc(L)
    order = [L.labels[int(i)] for i in rng.permutation(L.n)]
    pairs = [(rename[a], rename[b]) for a, b in doc.pairs]
    pairs = [pairs[int(i)] for i in rng.permutation(len(pairs))]
    copy = build_lattice(LatticeDoc(tuple(rename[x] for x in order), "covers", tuple(pairs)))
    return copy, rename


def brute_force_bases(L: FiniteLattice) -> list[frozenset[str]]:
    """All bases of ``L`` by exhaustive search over antichains.

    Elements are visited in a linear extension, so when an element is
    skipped nothing visited later can lie below it; a skipped element that
    is not yet covered therefore ends the branch.
    """
    if L.n > BRUTE_FORCE_BOUND:
        raise TooLargeError(f"brute force is limited to {BRUTE_FORCE_BOUND} elements")
    order = sorted(
        (x for x in range(L.n) if x != L.bottom),
        key=lambda x: (sum(L.leq[y][x] for y in range(L.n)), x),
    )
    found = []
    chosen: list[int] = []

    def walk(i):
        if i == len(order):
            found.append(L.names(chosen))
            return
        z = order[i]
        covered = any(L.leq[c][z] for c in chosen)
        if not covered and all(not L.leq[z][c] for c in chosen):
            chosen.append(z)
            walk(i + 1)
            chosen.pop()
        if covered:
            walk(i + 1)

    walk(0)
    return found
