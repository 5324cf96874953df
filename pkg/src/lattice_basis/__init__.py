"""Basis, dimension, consistency and entropy of finite lattices."""

from .audit import AuditReport, PropositionId, audit_all, audit_proposition
from .basis import (
    BasisResult,
    IndependenceVerdict,
    basis,
    dimension,
    is_independent,
    is_isolated_basis,
    is_orthogonal_basis,
)
from .core import (
    FiniteLattice,
    LatticeDoc,
    atoms,
    build_lattice,
    complements,
    export_dot,
    is_chain,
    join,
    lattice_to_doc,
    load_lattice,
    meet,
    parse_lattice_doc,
)
from .errors import LatticeError
from .generators import brute_force_bases, named_lattice, random_lattice
from .spectral import spectral_radius
from .structure import (
    ComplementationProfile,
    IsomorphismResult,
    complementation_profile,
    find_isomorphism,
    is_boolean,
    is_consistent,
    is_distributive,
    isolated_elements,
)
from .weighted import (
    EntropyReport,
    WeightedLattice,
    WeightedLatticeDoc,
    adjacency_matrix,
    entropy,
    lift_usual,
    maxmin_closure,
    parse_weighted_doc,
    validate_weighted,
    weighted_from_doc,
)

__version__ = "0.1.0"
