"""Command-line interface: ``lattice-basis <command> ...``.

Exit codes: 0 success, 1 domain failure (not a lattice, not isomorphic,
strict violations), 2 usage or parse error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .audit import PropositionId, audit_all, audit_proposition
from .basis import basis, basis_indices, is_isolated_basis, is_orthogonal_basis
from .core import atom_indices, export_dot, is_chain, lattice_to_doc, load_lattice
from .errors import (
    EmptyLatticeError,
    LatticeError,
    NoConvergenceError,
    NotAntisymmetricError,
    NotLatticeError,
)
from .generators import named_lattice, random_lattice
from .structure import (
    complementation_profile,
    find_isomorphism,
    is_boolean,
    is_consistent,
    is_distributive,
    isolated_indices,
)
from .weighted import adjacency_matrix, entropy, load_weighted, validate_weighted

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
DOMAIN_ERRORS = (NotLatticeError, NotAntisymmetricError, EmptyLatticeError)


def _emit(obj, as_json, text_lines=None, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in text_lines if text_lines is not None else _text(obj):
            stream.write(line + "\n")


def _text(obj, indent=""):
    for key, value in obj.items():
        if isinstance(value, dict):
            yield f"{indent}{key}:"
            yield from _text(value, indent + "  ")
        elif isinstance(value, list):
            yield f"{indent}{key}: " + ", ".join(map(str, value))
        else:
            yield f"{indent}{key}: {value}"


def _error(exc: LatticeError, as_json):
    obj = {"error": exc.code, "message": str(exc)}
    if exc.witness is not None:
        obj["witness"] = exc.witness
    if as_json:
        _emit(obj, True)
    else:
        sys.stderr.write(f"error [{exc.code}]: {exc}\n")


def _exit_for(exc):
    if isinstance(exc, NoConvergenceError):
        return EXIT_NUMERIC
    if isinstance(exc, DOMAIN_ERRORS):
        return EXIT_DOMAIN
    return EXIT_USAGE


def _ordered(L, idx):
    return [L.labels[i] for i in sorted(idx)]


def analysis_report(L) -> dict:
    B = basis(L)
    profile = complementation_profile(L)
    return {
        "is_lattice": True,
        "bounds": {"bottom": L.labels[L.bottom], "top": L.labels[L.top]},
        "atoms": _ordered(L, atom_indices(L)),
        "basis": _ordered(L, basis_indices(L)),
        "dimension": B.dimension,
        "orthogonal_basis": is_orthogonal_basis(L),
        "isolated_basis": is_isolated_basis(L),
        "isolated_elements": _ordered(L, isolated_indices(L)),
        "consistent": is_consistent(L),
        "distributive": is_distributive(L),
        "complemented": profile.complemented,
        "uniquely_complemented": profile.uniquely_complemented,
        "boolean": is_boolean(L),
        "chain": is_chain(L),
    }


def cmd_analyze(args):
    L = load_lattice(args.file)
    _emit(analysis_report(L), args.json or args.format == "json")
    return EXIT_OK


def _num(x):
    return float(format(x, ".12g"))


def entropy_report_obj(rep) -> dict:
    return {
        "spectral_radius": rep.spectral_radius,
        "entropy": "-inf" if rep.entropy == -math.inf else rep.entropy,
        "chaotic": rep.chaotic,
        "log_base": rep.log_base,
        "mode": rep.mode,
        "iterations": rep.iterations,
        "residual": rep.residual,
    }


def cmd_entropy(args):
    W = load_weighted(args.file)
    rep = entropy(W, mode=args.mode, base=args.base, tol=args.tol, max_iter=args.max_iter)
    obj = entropy_report_obj(rep)
    if args.matrix:
        obj["elements"] = list(W.labels)
        obj["matrix"] = [[_num(v) for v in row] for row in adjacency_matrix(W, args.mode)]
    violations = []
    if args.strict:
        violations = validate_weighted(W, strict=True)
        obj["violations"] = [
            {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail} for v in violations
        ]
    if args.json:
        _emit(obj, True)
    else:
        lines = [f"{k}: {v}" for k, v in obj.items() if k not in ("matrix", "violations", "elements")]
        if args.matrix:
            lines.append("matrix (" + " ".join(W.labels) + "):")
            lines += ["  " + " ".join(format(v, ".12g") for v in row) for row in obj["matrix"]]
        for v in violations:
            lines.append(f"violation ({v.axiom}): {v.detail}")
        _emit(None, False, lines)
    return EXIT_DOMAIN if violations else EXIT_OK


def cmd_audit(args):
    seed = 42 if args.seed is None else args.seed
    if args.prop is not None:
        reports = [audit_proposition(args.prop, args.trials, args.max_n, seed, workers=args.workers)]
    else:
        reports = audit_all(args.trials, args.max_n, seed, workers=args.workers)
    _emit([r.to_json_obj() for r in reports], True)
    return EXIT_OK


def _parse_random(text):
    try:
        g, m = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected N_GENERATORS,M_UNIVERSE") from None
    return g, m


def cmd_gen(args):
    if (args.name is None) == (args.random is None):
        sys.stderr.write("error: give exactly one of --name or --random\n")
        return EXIT_USAGE
    if args.name is not None:
        L = named_lattice(args.name, args.k)
    else:
        L = random_lattice(*args.random, seed=0 if args.seed is None else args.seed)
    text = json.dumps(lattice_to_doc(L).to_json_obj(), indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_iso(args):
    # exit 1 means "not isomorphic" here, so build failures are usage errors
    try:
        L1, L2 = load_lattice(args.file1), load_lattice(args.file2)
    except DOMAIN_ERRORS as exc:
        _error(exc, args.json)
        return EXIT_USAGE
    res = find_isomorphism(L1, L2)
    if not res.found:
        _emit({"isomorphic": False}, args.json, ["not isomorphic"])
        return EXIT_DOMAIN
    image = sorted(res.mapping[b] for b in basis(L1).basons)
    obj = {
        "isomorphic": True,
        "mapping": res.mapping,
        "basis_preserved": image == sorted(basis(L2).basons),
    }
    lines = [f"{a} -> {b}" for a, b in res.mapping.items()]
    lines.append(f"basis_preserved: {obj['basis_preserved']}")
    _emit(obj, args.json, lines)
    return EXIT_OK


def cmd_export(args):
    L = load_lattice(args.file)
    if args.format == "dot":
        sys.stdout.write(export_dot(L))
    else:
        sys.stdout.write(json.dumps(lattice_to_doc(L).to_json_obj(), indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _globals(suppress):
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="machine-readable JSON output")
    p.add_argument("--seed", type=_u64, default=d, help="random seed (u64)")
    p.add_argument("--tol", type=_positive_float, default=argparse.SUPPRESS if suppress else 1e-10,
                   help="spectral tolerance")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-basis", description=__doc__.splitlines()[0],
                                     parents=[_globals(False)])
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_globals(True)]

    p = sub.add_parser("analyze", parents=common, help="basis, dimension and structure report")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("entropy", parents=common, help="entropy of a weighted lattice")
    p.add_argument("file")
    p.add_argument("--mode", choices=("listed", "closed"), default="closed")
    p.add_argument("--base", choices=("e", "2"), default="e")
    p.add_argument("--strict", action="store_true", help="also check the axioms on the raw arcs")
    p.add_argument("--matrix", action="store_true", help="print the adjacency matrix")
    p.add_argument("--max-iter", type=int, default=10**6)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("audit", parents=common, help="empirical proposition checks")
    p.add_argument("--prop", type=PropositionId.parse, default=None)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("gen", parents=common, help="write a lattice document")
    p.add_argument("--name", choices=("chain", "bool", "m", "n5"))
    p.add_argument("--k", type=int)
    p.add_argument("--random", type=_parse_random, metavar="G,M")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("iso", parents=common, help="find an isomorphism between two lattices")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("export", parents=common, help="export a lattice as DOT or JSON")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except LatticeError as exc:
        _error(exc, getattr(args, "json", False))
        return _exit_for(exc)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
