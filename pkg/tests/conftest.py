import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lattice_basis.core import build_lattice, parse_lattice_doc  # noqa: E402
from lattice_basis.generators import named_lattice  # noqa: E402
from oracles import EXAMPLE_42_ARCS  # noqa: E402

ACCEPTANCE_LINES = []


def lattice(elements, covers):
    doc = {"elements": list(elements), "relation": "covers", "pairs": [list(p) for p in covers]}
    return build_lattice(parse_lattice_doc(json.dumps(doc)))


@pytest.fixture
def bool2():
    return named_lattice("bool", 2)


@pytest.fixture
def bool3():
    return named_lattice("bool", 3)


@pytest.fixture
def m3():
    return named_lattice("m", 3)


@pytest.fixture
def n5():
    return named_lattice("n5")


@pytest.fixture
def ex42_text():
    return json.dumps({
        "elements": ["0", "x", "y", "1"],
        "arcs": [{"from": a, "to": b, "p": p} for a, b, p in EXAMPLE_42_ARCS],
    })


@pytest.fixture
def report_criterion():
    def record(name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
