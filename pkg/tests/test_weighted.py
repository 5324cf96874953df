import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_basis.errors import ParseError, UnknownLabelError, WeightRangeError
from lattice_basis.generators import named_lattice, random_lattice
from lattice_basis.weighted import (
    WeightedLattice,
    adjacency_matrix,
    entropy,
    lift_usual,
    maxmin_closure,
    parse_weighted_doc,
    validate_weighted,
    weighted_from_doc,
)
from oracles import EXAMPLE_42_CLOSED_RHO, EXAMPLE_42_LISTED_RHO, squaring_radius


@pytest.fixture
def ex42(ex42_text):
    return weighted_from_doc(parse_weighted_doc(ex42_text))


def wl(labels, arcs):
    return weighted_from_doc(parse_weighted_doc(json.dumps({
        "elements": labels, "arcs": [{"from": a, "to": b, "p": p} for a, b, p in arcs],
    })))


def test_parse_example(ex42_text):
    doc = parse_weighted_doc(ex42_text.encode())
    assert doc.elements == ("0", "x", "y", "1") and len(doc.arcs) == 8


@pytest.mark.parametrize("arc, exc", [
    ({"from": "a", "to": "b", "p": 1.5}, WeightRangeError),
    ({"from": "a", "to": "b", "p": 0}, WeightRangeError),
    ({"from": "a", "to": "b", "p": "0.5"}, ParseError),
    ({"from": "a", "to": "q", "p": 0.5}, UnknownLabelError),
    ({"from": "a", "to": "a", "p": 0.5}, ParseError),
    ({"from": "a", "p": 0.5}, ParseError),
])
def test_parse_errors(arc, exc):
    with pytest.raises(exc):
        parse_weighted_doc(json.dumps({"elements": ["a", "b"], "arcs": [arc]}))


def test_duplicate_arc():
    arc = {"from": "a", "to": "b", "p": 0.5}
    with pytest.raises(ParseError):
        parse_weighted_doc(json.dumps({"elements": ["a", "b"], "arcs": [arc, arc]}))


def test_single_element_no_arcs():
    W = wl(["a"], [])
    assert adjacency_matrix(W, "listed").tolist() == [[0.0]]
    assert adjacency_matrix(W, "closed").tolist() == [[1.0]]


def test_closure_of_example(ex42):
    C = maxmin_closure(ex42)
    i = {lab: k for k, lab in enumerate(C.labels)}
    assert C.w[i["0"], i["1"]] == pytest.approx(0.3)
    # hand-computed two-hop bottlenecks
    assert C.w[i["1"], i["0"]] == pytest.approx(0.2)
    assert C.w[i["x"], i["y"]] == pytest.approx(0.3)
    assert C.w[i["y"], i["x"]] == pytest.approx(0.2)
    assert np.all(np.diag(C.w) == 1.0) and C.closed


def test_closure_idempotent(ex42):
    C = maxmin_closure(ex42)
    assert maxmin_closure(C) == C


def test_single_arc_closure():
    C = maxmin_closure(wl(["a", "b"], [("a", "b", 0.4)]))
    assert C.w.tolist() == [[1.0, 0.4], [0.0, 1.0]]


def test_strict_validation_of_raw_example(ex42):
    v = validate_weighted(ex42, strict=True)
    assert v and all(x.axiom == "iii" for x in v)
    assert any(x.witness == ("0", "x", "1") for x in v)


def test_closed_example_is_valid(ex42):
    assert validate_weighted(ex42, strict=False) == []
    C = maxmin_closure(ex42)
    assert C.w[0, 3] + C.w[3, 0] <= 1


def test_pair_bound_violation():
    v = validate_weighted(wl(["x", "y"], [("x", "y", 0.6), ("y", "x", 0.6)]))
    assert [x.axiom for x in v] == ["ii"]


def test_reflexivity_checked_on_closed():
    W = WeightedLattice(("a", "b"), np.array([[0.5, 0.0], [0.0, 1.0]]), closed=True)
    assert [x.axiom for x in validate_weighted(W)] == ["i"]


def test_listed_adjacency_row(ex42):
    A = adjacency_matrix(ex42, "listed")
    assert A[0].tolist() == [0.0, 0.2, 0.3, 0.0]
    assert np.all(np.diag(adjacency_matrix(ex42, "closed")) == 1.0)


def test_frozen_oracle_values(ex42):
    assert squaring_radius(adjacency_matrix(ex42, "listed")) == pytest.approx(EXAMPLE_42_LISTED_RHO, abs=1e-12)
    assert squaring_radius(adjacency_matrix(ex42, "closed")) == pytest.approx(EXAMPLE_42_CLOSED_RHO, abs=1e-12)


def test_example_entropy(ex42):
    closed = entropy(ex42, "closed")
    assert closed.chaotic and 1.3 <= closed.spectral_radius <= 2.2
    assert abs(closed.spectral_radius - EXAMPLE_42_CLOSED_RHO) <= 1e-6
    assert closed.entropy == pytest.approx(math.log(EXAMPLE_42_CLOSED_RHO), abs=1e-9)
    listed = entropy(ex42, "listed")
    assert listed.spectral_radius < 1 and not listed.chaotic
    assert abs(listed.spectral_radius - EXAMPLE_42_LISTED_RHO) <= 1e-6


def test_base_two(ex42):
    rep = entropy(ex42, "closed", base="2")
    assert rep.entropy == pytest.approx(math.log2(EXAMPLE_42_CLOSED_RHO), abs=1e-9)
    assert rep.log_base == "2"


def test_zero_matrix_entropy():
    rep = entropy(wl(["a", "b"], []), "listed")
    assert rep.spectral_radius == 0.0 and rep.entropy == -math.inf and not rep.chaotic


def test_lift_usual():
    assert lift_usual(named_lattice("chain", 2)).w.tolist() == [[1.0, 1.0], [0.0, 1.0]]
    assert validate_weighted(lift_usual(named_lattice("bool", 2))) == []
    rep = entropy(lift_usual(named_lattice("bool", 3)), "closed")
    assert rep.spectral_radius == 1.0 and rep.entropy == 0.0 and not rep.chaotic


random_lattices = st.builds(
    random_lattice, st.integers(0, 6), st.integers(0, 6), st.integers(0, 2**32)
)


@settings(max_examples=100, deadline=None)
@given(random_lattices)
def test_lift_is_triangular_under_linear_extension(L):
    W = lift_usual(L)
    order = sorted(range(L.n), key=lambda x: sum(L.leq[y][x] for y in range(L.n)))
    M = W.w[np.ix_(order, order)]
    assert np.all(np.tril(M, -1) == 0) and np.all(np.diag(M) == 1)
    assert abs(entropy(W, "closed").entropy) <= 1e-9


weight_matrices = st.integers(0, 2**32).map(
    lambda s: np.random.default_rng(s).random((5, 5)) * (np.random.default_rng(s + 1).random((5, 5)) < 0.4)
)


@settings(max_examples=100, deadline=None)
@given(weight_matrices)
def test_closure_monotone_idempotent_transitive(w):
    np.fill_diagonal(w, 0.0)
    W = WeightedLattice(tuple("abcde"), w)
    C = maxmin_closure(W)
    assert np.all(C.w >= W.w)
    assert maxmin_closure(C) == C
    assert not [v for v in validate_weighted(C) if v.axiom in ("i", "iii")]


@settings(max_examples=100, deadline=None)
@given(weight_matrices)
def test_closure_is_least_transitive_relation(w):
    # brute force: repeat two-hop relaxation until nothing changes
    np.fill_diagonal(w, 0.0)
    ref = w.copy()
    while True:
        nxt = np.maximum(ref, np.max(np.minimum(ref[:, :, None], ref[None, :, :]), axis=1))
        if np.array_equal(nxt, ref):
            break
        ref = nxt
    np.fill_diagonal(ref, 1.0)
    assert np.allclose(maxmin_closure(WeightedLattice(tuple("abcde"), w)).w, ref)
