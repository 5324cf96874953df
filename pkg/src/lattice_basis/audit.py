"""
Empirical checks of the basis, consistency and entropy propositions.

Each proposition has one checker.  A run feeds it the named catalog (up
to ``max_n`` elements) followed by ``trials`` random lattices; random
trial ``i`` draws everything from a generator seeded with ``seed ^ i``,
so a report does not depend on execution order or worker count.
Checkers state the propositions literally, under the readings documented
in the basis and structure modules, and never repair them: a failing
instance becomes the report's witness.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional

import numpy as np

from .basis import basis, basis_indices, dependence_witness, is_independent_indices, is_orthogonal_basis
from .core import FiniteLattice, atom_indices, build_lattice, is_chain, join_all, lattice_to_doc
from .errors import ParamRangeError, UnknownNameError
from .generators import BRUTE_FORCE_BOUND, brute_force_bases, catalog, random_lattice, shuffled_copy
from .structure import (
    complementation_profile,
    find_isomorphism,
    is_boolean,
    is_consistent,
    isolated_indices,
)
from .weighted import entropy, lift_usual

HOLDS = "holds-on-sample"
COUNTEREXAMPLE = "counterexample-found"
SEED_LIMIT = 2**64
MAX_SUBSET = 6
ENTROPY_TOL = 1e-9


class PropositionId(str, enum.Enum):
    P2_3 = "P2_3"
    P2_4 = "P2_4"
    P2_7 = "P2_7"
    P2_8 = "P2_8"
    P2_10 = "P2_10"
    P2_11 = "P2_11"
    P2_12 = "P2_12"
    P2_16 = "P2_16"
    P2_21 = "P2_21"
    P2_22 = "P2_22"
    P2_24 = "P2_24"
    P2_25 = "P2_25"
    P4_5 = "P4_5"

    @classmethod
    def parse(cls, value) -> "PropositionId":
        try:
            return cls(value)
        except ValueError:
            raise UnknownNameError(f"unknown proposition {value!r}") from None


@dataclass(frozen=True)
class AuditReport:
    proposition: PropositionId
    trials: int
    failures: int
    verdict: str
    seed: int
    max_n: int
    witness: Optional[dict] = None

    def to_json_obj(self) -> dict:
        return {
            "proposition": self.proposition.value,
            "trials": self.trials,
            "failures": self.failures,
            "verdict": self.verdict,
            "seed": self.seed,
            "max_n": self.max_n,
            "witness": self.witness,
        }


# A checker returns None when the instance agrees with the proposition,
# otherwise (offending element labels, explanation).
Failure = Optional[tuple[list[str], str]]


def _labels(L, idx):
    return [L.labels[i] for i in sorted(idx)]


def check_p2_3(L, rng) -> Failure:
    found = brute_force_bases(L)
    expected = basis(L).basons
    if found == [expected]:
        return None
    flat = sorted({x for b in found for x in b})
    return flat, f"brute force found {len(found)} bases, basis() gave {sorted(expected)}"


def check_p2_4(L, rng) -> Failure:
    if L.n < 2 or not is_chain(L):
        return None
    B = basis_indices(L)
    if len(B) == 1:
        return None
    return _labels(L, B), f"chain of {L.n} elements has dimension {len(B)}"


def _iso_copy(L, rng):
    copy, _ = shuffled_copy(L, rng)
    return copy, find_isomorphism(L, copy)


def check_p2_7(L, rng) -> Failure:
    copy, res = _iso_copy(L, rng)
    if not res.found:
        return [], "no isomorphism found onto a relabelled copy"
    f = res.mapping
    for x in L.labels:
        for y in L.labels:
            if L.leq[L.idx(x)][L.idx(y)] != copy.leq[copy.idx(f[x])][copy.idx(f[y])]:
                return [x, y], "mapping does not preserve the order"
    image = frozenset(f[b] for b in basis(L).basons)
    if image != basis(copy).basons:
        return sorted(basis(L).basons), "image of the basis is not the basis of the copy"
    return None


def check_p2_8(L, rng) -> Failure:
    copy, res = _iso_copy(L, rng)
    if not res.found:
        return [], "no isomorphism found onto a relabelled copy"
    d1, d2 = basis(L).dimension, basis(copy).dimension
    if d1 != d2:
        return [], f"isomorphic lattices with dimensions {d1} and {d2}"
    return None


def check_p2_10(L, rng) -> Failure:
    extra = set(basis_indices(L)) - set(atom_indices(L))
    if not extra:
        return None
    return _labels(L, extra), "basons that are not atoms"


def check_p2_11(L, rng) -> Failure:
    if not is_boolean(L):
        return None
    A, B = set(atom_indices(L)), set(basis_indices(L))
    if A == B:
        return None
    return _labels(L, A ^ B), "Boolean lattice whose atoms differ from its basons"


def _not_join_of_basons(L):
    B = basis_indices(L)
    for x in range(L.n):
        if x == L.bottom:
            continue
        below = [b for b in B if L.leq[b][x]]
        if not below or join_all(L, below) != x:
            return x
    return None


def check_p2_12(L, rng) -> Failure:
    boolean = is_boolean(L)
    bad = _not_join_of_basons(L)
    if boolean and bad is not None:
        return [L.labels[bad]], "Boolean, yet this element is not a join of basons"
    if not boolean and bad is None:
        return _labels(L, basis_indices(L)), "every nonzero element is a join of basons, yet not Boolean"
    return None


def check_p2_16(L, rng) -> Failure:
    if not (complementation_profile(L).uniquely_complemented and is_orthogonal_basis(L)):
        return None
    B = basis_indices(L)
    if len(B) % 2 == 0:
        return None
    return _labels(L, B), f"uniquely complemented with orthogonal basis of odd dimension {len(B)}"


def check_p2_21(L, rng) -> Failure:
    if not is_boolean(L):
        return None
    dim = len(basis_indices(L))
    if (not is_consistent(L)) == (dim == 2):
        return None
    return _labels(L, isolated_indices(L)), f"Boolean of dimension {dim}, consistent={is_consistent(L)}"


def check_p2_22(L, rng) -> Failure:
    if not is_boolean(L):
        return None
    dim = len(basis_indices(L))
    orth = is_orthogonal_basis(L)
    if orth == (dim == 2):
        return None
    return _labels(L, basis_indices(L)), f"Boolean of dimension {dim}, orthogonal={orth}"


def check_p2_24(L, rng) -> Failure:
    B = basis_indices(L)
    if is_independent_indices(L, B):
        return None
    return _labels(L, B), "basis is dependent"


def check_p2_25(L, rng) -> Failure:
    iso = set(isolated_indices(L))
    if not iso:
        return None
    for r in range(1, min(MAX_SUBSET, L.n) + 1):
        for combo in combinations(range(L.n), r):
            if iso.isdisjoint(combo):
                continue
            dep = dependence_witness(L, list(combo))
            if dep is None:
                continue
            x, S = dep
            isolated = [L.labels[s] for s in combo if s in iso]
            return (
                [L.labels[i] for i in combo],
                f"{L.labels[x]} = {' + '.join(L.labels[s] for s in S)}, yet {', '.join(isolated)} isolated",
            )
    return None


def check_p4_5(L, rng) -> Failure:
    rep = entropy(lift_usual(L), "closed", "e")
    if abs(rep.entropy) <= ENTROPY_TOL:
        return None
    return [], f"usual lattice has entropy {rep.entropy!r} (radius {rep.spectral_radius!r})"


CHECKERS: dict[PropositionId, Callable[[FiniteLattice, np.random.Generator], Failure]] = {
    PropositionId.P2_3: check_p2_3,
    PropositionId.P2_4: check_p2_4,
    PropositionId.P2_7: check_p2_7,
    PropositionId.P2_8: check_p2_8,
    PropositionId.P2_10: check_p2_10,
    PropositionId.P2_11: check_p2_11,
    PropositionId.P2_12: check_p2_12,
    PropositionId.P2_16: check_p2_16,
    PropositionId.P2_21: check_p2_21,
    PropositionId.P2_22: check_p2_22,
    PropositionId.P2_24: check_p2_24,
    PropositionId.P2_25: check_p2_25,
    PropositionId.P4_5: check_p4_5,
}


def _random_instance(rng, max_n):
    for _ in range(64):
        m = int(rng.integers(2, 8))
        g = int(rng.integers(1, 7))
        s = int(rng.integers(2**63))
        L = random_lattice(g, m, s)
        if L.n <= max_n:
            return f"random(n_generators={g}, m_universe={m}, seed={s})", L
    m = 0 if max_n < 2 else 1
    return f"random(n_generators=0, m_universe={m}, seed=0)", random_lattice(0, m, 0)


@lru_cache(maxsize=8192)
def instance(kind: str, index: int, seed: int, max_n: int) -> tuple[str, FiniteLattice, int]:
    """Instance ``index`` of a run: (source description, lattice, follow-up seed).

    The follow-up seed drives any further randomness in a checker, e.g. the
    relabelling for the isomorphism checks.
    """
    if kind == "catalog":
        name, L = catalog(max_n)[index]
        rng = np.random.default_rng([seed ^ index, 1])
    else:
        rng = np.random.default_rng(seed ^ index)
        name, L = _random_instance(rng, max_n)
    return name, L, int(rng.integers(2**63))


def _run_one(args):
    prop, kind, index, seed, max_n = args
    source, L, follow = instance(kind, index, seed, max_n)
    failure = CHECKERS[prop](L, np.random.default_rng(follow))
    if failure is None:
        return None
    elements, detail = failure
    return {
        "source": source,
        "lattice": lattice_to_doc(L).to_json_obj(),
        "elements": elements,
        "detail": detail,
    }


def _check_params(trials, max_n, seed):
    if not isinstance(trials, int) or trials < 1:
        raise ParamRangeError("trials must be >= 1")
    if not isinstance(max_n, int) or not 1 <= max_n <= BRUTE_FORCE_BOUND:
        raise ParamRangeError(f"max_n must be in [1, {BRUTE_FORCE_BOUND}]")
    if not isinstance(seed, int) or not 0 <= seed < SEED_LIMIT:
        raise ParamRangeError("seed must be an unsigned 64-bit integer")


def _jobs(prop, trials, max_n, seed):
    jobs = [(prop, "catalog", j, seed, max_n) for j in range(len(catalog(max_n)))]
    jobs += [(prop, "random", i, seed, max_n) for i in range(trials)]
    return jobs


def _assemble(prop, jobs, results, seed, max_n):
    failures = [w for w in results if w is not None]
    return AuditReport(
        proposition=prop,
        trials=len(jobs),
        failures=len(failures),
        verdict=COUNTEREXAMPLE if failures else HOLDS,
        seed=seed,
        max_n=max_n,
        witness=failures[0] if failures else None,
    )


def audit_proposition(prop, trials: int, max_n: int, seed: int, workers: int = 1) -> AuditReport:
    """Run one checker over the catalog plus ``trials`` random lattices.

    ``trials`` in the report counts every instance checked, catalog included.
    """
    prop = PropositionId.parse(prop)
    _check_params(trials, max_n, seed)
    jobs = _jobs(prop, trials, max_n, seed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=32))
    else:
        results = [_run_one(j) for j in jobs]
    return _assemble(prop, jobs, results, seed, max_n)


def audit_all(trials: int, max_n: int, seed: int, workers: int = 1) -> list[AuditReport]:
    _check_params(trials, max_n, seed)
    all_jobs = {p: _jobs(p, trials, max_n, seed) for p in PropositionId}
    if workers > 1:
        flat = [j for p in PropositionId for j in all_jobs[p]]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, flat, chunksize=64))
        out, pos = [], 0
        for p in PropositionId:
            k = len(all_jobs[p])
            out.append(_assemble(p, all_jobs[p], results[pos : pos + k], seed, max_n))
            pos += k
        return out
    return [
        _assemble(p, all_jobs[p], [_run_one(j) for j in all_jobs[p]], seed, max_n)
        for p in PropositionId
    ]


def replay_witness(report: AuditReport, seed: int = 0) -> bool:
    """Rebuild the witness lattice and confirm the checker still rejects it."""
    if report.witness is None:
        return False
    from .core import LatticeDoc

    doc = report.witness["lattice"]
    L = build_lattice(LatticeDoc(tuple(doc["elements"]), doc["relation"], tuple(map(tuple, doc["pairs"]))))
    return CHECKERS[report.proposition](L, np.random.default_rng(seed)) is not None
