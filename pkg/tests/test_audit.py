import json
import time

import pytest

from lattice_basis.audit import (
    COUNTEREXAMPLE,
    HOLDS,
    PropositionId,
    audit_all,
    audit_proposition,
    replay_witness,
)
from lattice_basis.errors import ParamRangeError, UnknownNameError


def test_p2_3_holds():
    r = audit_proposition("P2_3", 500, 12, 7)
    assert r.verdict == HOLDS and r.failures == 0 and r.witness is None


def test_p2_12_counterexample_is_m3():
    r = audit_proposition(PropositionId.P2_12, 1, 5, 0)
    assert r.verdict == COUNTEREXAMPLE and r.failures > 0
    assert r.witness["source"] == "m_3"
    assert sorted(r.witness["elements"]) == ["a", "b", "c"]


def test_p2_25_counterexample_is_bool2():
    r = audit_proposition("P2_25", 100, 6, 1)
    assert r.verdict == COUNTEREXAMPLE
    assert r.witness["source"] == "bool_2"
    assert r.witness["elements"] == ["a", "b", "1"]
    assert r.witness["detail"].startswith("1 = a + b")


def test_p4_5_holds():
    assert audit_proposition("P4_5", 200, 12, 3).verdict == HOLDS


def test_audit_all_small():
    reports = audit_all(100, 10, 42)
    assert len(reports) == 13
    with_witness = {r.proposition.value for r in reports if r.witness}
    assert with_witness == {"P2_12", "P2_25"}
    for r in reports:
        assert (r.verdict == COUNTEREXAMPLE) == (r.failures > 0) == (r.witness is not None)
    again = audit_all(100, 10, 42)
    assert [r.to_json_obj() for r in again] == [r.to_json_obj() for r in reports]


def test_audit_all_tiny_is_fast():
    t0 = time.perf_counter()
    audit_all(1, 3, 0)
    assert time.perf_counter() - t0 < 1.0


def test_parallel_matches_serial():
    serial = audit_proposition("P2_7", 60, 8, 11)
    parallel = audit_proposition("P2_7", 60, 8, 11, workers=2)
    assert json.dumps(serial.to_json_obj()) == json.dumps(parallel.to_json_obj())


def test_witnesses_replay():
    for r in audit_all(50, 8, 5):
        if r.witness is not None:
            assert replay_witness(r)


@pytest.mark.parametrize("kwargs", [
    {"trials": 0, "max_n": 5, "seed": 0},
    {"trials": 5, "max_n": 0, "seed": 0},
    {"trials": 5, "max_n": 21, "seed": 0},
    {"trials": 5, "max_n": 5, "seed": -1},
    {"trials": 5, "max_n": 5, "seed": 2**64},
])
def test_param_errors(kwargs):
    with pytest.raises(ParamRangeError):
        audit_proposition("P2_4", **kwargs)


def test_unknown_proposition():
    with pytest.raises(UnknownNameError):
        audit_proposition("P9_9", 1, 3, 0)


def test_trials_count_catalog_plus_random():
    r = audit_proposition("P2_4", 10, 5, 0)
    assert r.trials == 12 + 10
